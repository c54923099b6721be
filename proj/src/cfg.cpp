#include "seuguard/cfg.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

#include "seuguard/pretty.hpp"

namespace seuguard::cfg {

namespace {

using namespace ast;

std::string expr_label(const Expr& e) { return frontend::pretty_print(e); }

// A dangling predecessor waiting for its successor node: the source node and
// the label its outgoing edge must carry.
struct Tail {
  int from;
  EdgeLabel label;
};

class Builder {
 public:
  explicit Builder(const Program& p)
      : prog_(p), stream_var_(static_cast<int>(p.vars.size())) {}

  Cfg run() {
    g_.program = &prog_;
    g_.nodes.resize(static_cast<std::size_t>(prog_.stmt_count) + 2);
    g_.entry = prog_.stmt_count;
    g_.exit = prog_.stmt_count + 1;
    node(g_.entry, NodeKind::Entry).label = "entry";
    node(g_.exit, NodeKind::Exit).label = "exit";

    std::vector<Tail> tails{{g_.entry, EdgeLabel::None}};
    for (const auto& v : prog_.vars) {
      Node& n = node(v.decl_id, v.is_param ? NodeKind::ParamDef : NodeKind::LocalInit);
      n.decl = &v;
      n.span = v.span;
      n.defs.push_back(v.index);
      if (v.init) {
        set_uses(n, *v.init);
        n.label = v.name + " = " + expr_label(*v.init);
      } else {
        n.label = "input(" + v.name + ")";
      }
      connect(tails, v.decl_id);
      tails = {{v.decl_id, EdgeLabel::None}};
    }
    tails = lower_block(prog_.body, std::move(tails));
    connect(tails, g_.exit);
    g_.finalize();
    return std::move(g_);
  }

 private:
  Node& node(int id, NodeKind kind) {
    Node& n = g_.nodes[static_cast<std::size_t>(id)];
    n.id = id;
    n.kind = kind;
    return n;
  }

  void connect(const std::vector<Tail>& tails, int to) {
    for (const Tail& t : tails) g_.edges.push_back({t.from, to, t.label});
  }

  // uses from the expression; an input() read also uses and re-defines the
  // stream cursor
  void set_uses(Node& n, const Expr& e) {
    n.uses = used_variables(e);
    if (contains_input(e)) {
      n.uses.push_back(stream_var_);
      n.defs.push_back(stream_var_);
      std::sort(n.defs.begin(), n.defs.end());
    }
  }

  // Connects a block after the given dangling predecessors; returns the
  // dangling tails of the block (empty when all paths returned).
  std::vector<Tail> lower_block(const Block& block, std::vector<Tail> tails) {
    for (const auto& sp : block) {
      const Stmt& s = *sp;
      if (const auto* a = std::get_if<Assign>(&s.node)) {
        Node& n = node(s.id, NodeKind::Assign);
        n.stmt = &s;
        n.span = s.span;
        n.defs.push_back(a->index);
        set_uses(n, *a->value);
        std::sort(n.defs.begin(), n.defs.end());
        n.label = a->name + " = " + expr_label(*a->value);
        connect(tails, s.id);
        tails = {{s.id, EdgeLabel::None}};
      } else if (const auto* i = std::get_if<If>(&s.node)) {
        Node& n = node(s.id, NodeKind::CondIf);
        n.stmt = &s;
        n.span = s.span;
        set_uses(n, *i->cond);
        n.label = expr_label(*i->cond);
        connect(tails, s.id);
        std::vector<Tail> then_tails =
            lower_block(i->then_body, {{s.id, EdgeLabel::True}});
        std::vector<Tail> else_tails =
            lower_block(i->else_body, {{s.id, EdgeLabel::False}});
        tails.clear();
        tails.insert(tails.end(), then_tails.begin(), then_tails.end());
        tails.insert(tails.end(), else_tails.begin(), else_tails.end());
      } else if (const auto* w = std::get_if<While>(&s.node)) {
        Node& n = node(s.id, NodeKind::CondWhile);
        n.stmt = &s;
        n.span = s.span;
        set_uses(n, *w->cond);
        n.label = expr_label(*w->cond);
        connect(tails, s.id);
        std::vector<Tail> body_tails =
            lower_block(w->body, {{s.id, EdgeLabel::True}});
        connect(body_tails, s.id);  // back edges
        tails = {{s.id, EdgeLabel::False}};
      } else if (const auto* o = std::get_if<Output>(&s.node)) {
        Node& n = node(s.id, NodeKind::Output);
        n.stmt = &s;
        n.span = s.span;
        set_uses(n, *o->value);
        n.label = "output " + expr_label(*o->value);
        connect(tails, s.id);
        tails = {{s.id, EdgeLabel::None}};
      } else if (const auto* r = std::get_if<Return>(&s.node)) {
        Node& n = node(s.id, NodeKind::Return);
        n.stmt = &s;
        n.span = s.span;
        set_uses(n, *r->value);
        n.label = "return " + expr_label(*r->value);
        connect(tails, s.id);
        g_.edges.push_back({s.id, g_.exit, EdgeLabel::None});
        tails = {};
      } else {
        const auto& p = std::get<Print>(s.node);
        Node& n = node(s.id, NodeKind::Print);
        n.stmt = &s;
        n.span = s.span;
        set_uses(n, *p.value);
        n.label = "print " + expr_label(*p.value);
        connect(tails, s.id);
        tails = {{s.id, EdgeLabel::None}};
      }
    }
    return tails;
  }

  Cfg g_;
  const Program& prog_;
  int stream_var_;
};

}  // namespace

void Cfg::finalize() {
  std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
    return a.from != b.from ? a.from < b.from : a.to < b.to;
  });
  succ.assign(nodes.size(), {});
  pred.assign(nodes.size(), {});
  for (const auto& e : edges) {
    succ[static_cast<std::size_t>(e.from)].push_back(e.to);
    pred[static_cast<std::size_t>(e.to)].push_back(e.from);
  }
}

Cfg build_cfg(const ast::Program& p) {
  Builder b(p);
  return b.run();
}

PostDominators post_dominators(const Cfg& g) {
  const std::size_t n = g.nodes.size();
  PostDominators out;

  // Nodes that cannot reach exit are excluded from the relation.
  std::vector<bool> reaches_exit(n, false);
  {
    std::deque<int> work{g.exit};
    reaches_exit[static_cast<std::size_t>(g.exit)] = true;
    while (!work.empty()) {
      int v = work.front();
      work.pop_front();
      for (int p : g.pred[static_cast<std::size_t>(v)])
        if (!reaches_exit[static_cast<std::size_t>(p)]) {
          reaches_exit[static_cast<std::size_t>(p)] = true;
          work.push_back(p);
        }
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    if (!reaches_exit[i] && g.nodes[i].id >= 0)
      out.excluded.push_back(static_cast<int>(i));

  // Iterative dataflow on the reverse graph, full sets as the top element.
  out.pd.assign(n, std::vector<bool>(n, true));
  for (std::size_t i = 0; i < n; ++i)
    if (!reaches_exit[i]) out.pd[i].assign(n, false);
  auto& exit_set = out.pd[static_cast<std::size_t>(g.exit)];
  exit_set.assign(n, false);
  exit_set[static_cast<std::size_t>(g.exit)] = true;

  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < n; ++i) {
      if (!reaches_exit[i] || static_cast<int>(i) == g.exit) continue;
      std::vector<bool> next(n, true);
      bool any_succ = false;
      for (int s : g.succ[i]) {
        if (!reaches_exit[static_cast<std::size_t>(s)]) continue;  // excluded
        any_succ = true;
        const auto& ss = out.pd[static_cast<std::size_t>(s)];
        for (std::size_t k = 0; k < n; ++k) next[k] = next[k] && ss[k];
      }
      if (!any_succ) next.assign(n, false);
      next[i] = true;
      if (next != out.pd[i]) {
        out.pd[i] = std::move(next);
        changed = true;
      }
    }
  }
  return out;
}

std::vector<ControlEdge> control_dependence(const Cfg& g) {
  return control_dependence(g, post_dominators(g));
}

std::vector<ControlEdge> control_dependence(const Cfg& g, const PostDominators& pd) {
  std::vector<ControlEdge> edges;
  const std::size_t n = g.nodes.size();
  for (std::size_t c = 0; c < n; ++c) {
    if (!g.is_condition(static_cast<int>(c))) continue;
    if (pd.pd[c].empty() ||
        std::find(pd.excluded.begin(), pd.excluded.end(), static_cast<int>(c)) !=
            pd.excluded.end())
      continue;
    for (std::size_t s = 0; s < n; ++s) {
      if (pd.pd[c][s]) continue;  // s post-dominates c: not dependent
      bool dominates_a_successor = false;
      for (int u : g.succ[c]) {
        const auto& us = pd.pd[static_cast<std::size_t>(u)];
        if (!us.empty() && us[s]) {
          dominates_a_successor = true;
          break;
        }
      }
      if (dominates_a_successor)
        edges.push_back({static_cast<int>(c), static_cast<int>(s)});
    }
  }
  std::sort(edges.begin(), edges.end(), [](const ControlEdge& a, const ControlEdge& b) {
    return a.from != b.from ? a.from < b.from : a.to < b.to;
  });
  return edges;
}

namespace {

struct ReachingDefs {
  // One bit per definition site; def_sites[k] = (node, var).
  std::vector<std::pair<int, int>> def_sites;
  std::vector<std::vector<bool>> in;  // per node
};

ReachingDefs reaching_definitions(const Cfg& g) {
  ReachingDefs rd;
  const std::size_t n = g.nodes.size();
  for (std::size_t i = 0; i < n; ++i)
    for (int var : g.nodes[i].defs)
      rd.def_sites.emplace_back(static_cast<int>(i), var);
  const std::size_t d = rd.def_sites.size();
  rd.in.assign(n, std::vector<bool>(d, false));
  std::vector<std::vector<bool>> out(n, std::vector<bool>(d, false));

  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<bool> in_set(d, false);
      for (int p : g.pred[i]) {
        const auto& po = out[static_cast<std::size_t>(p)];
        for (std::size_t k = 0; k < d; ++k)
          if (po[k]) in_set[k] = true;
      }
      std::vector<bool> out_set = in_set;
      for (int var : g.nodes[i].defs)
        for (std::size_t k = 0; k < d; ++k)
          out_set[k] = rd.def_sites[k].second == var
                           ? rd.def_sites[k].first == static_cast<int>(i)
                           : out_set[k];
      if (in_set != rd.in[i]) {
        rd.in[i] = std::move(in_set);
        changed = true;
      }
      if (out_set != out[i]) {
        out[i] = std::move(out_set);
        changed = true;
      }
    }
  }
  return rd;
}

}  // namespace

std::vector<DataEdge> data_dependence(const Cfg& g) {
  ReachingDefs rd = reaching_definitions(g);
  std::vector<DataEdge> edges;
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    const auto& uses = g.nodes[i].uses;
    if (uses.empty()) continue;
    for (std::size_t k = 0; k < rd.def_sites.size(); ++k) {
      if (!rd.in[i][k]) continue;
      auto [def_node, var] = rd.def_sites[k];
      if (std::binary_search(uses.begin(), uses.end(), var))
        edges.push_back({def_node, static_cast<int>(i), var});
    }
  }
  std::sort(edges.begin(), edges.end(), [](const DataEdge& a, const DataEdge& b) {
    if (a.from != b.from) return a.from < b.from;
    if (a.to != b.to) return a.to < b.to;
    return a.var < b.var;
  });
  return edges;
}

Pdg build_pdg(const Cfg& g) {
  Pdg pdg;
  pdg.cfg = &g;
  pdg.control = control_dependence(g);
  pdg.data = data_dependence(g);
  pdg.preds.assign(g.nodes.size(), {});
  for (const auto& e : pdg.control)
    pdg.preds[static_cast<std::size_t>(e.to)].push_back(e.from);
  for (const auto& e : pdg.data)
    pdg.preds[static_cast<std::size_t>(e.to)].push_back(e.from);
  for (auto& ps : pdg.preds) {
    std::sort(ps.begin(), ps.end());
    ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
  }
  ReachingDefs rd = reaching_definitions(g);
  pdg.reach_in.assign(g.nodes.size(), {});
  for (std::size_t i = 0; i < g.nodes.size(); ++i)
    for (std::size_t k = 0; k < rd.def_sites.size(); ++k)
      if (rd.in[i][k])
        pdg.reach_in[i].emplace_back(rd.def_sites[k].second, rd.def_sites[k].first);
  return pdg;
}

namespace {
std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    out.push_back(c);
  }
  return out;
}
}  // namespace

std::string to_dot(const Cfg& g) {
  std::ostringstream os;
  os << "digraph cfg {\n";
  for (const auto& n : g.nodes) {
    if (n.id < 0) continue;
    const char* shape = g.is_condition(n.id) ? "diamond" : "box";
    os << "  n" << n.id << " [shape=" << shape << ", label=\"" << n.id << ": "
       << dot_escape(n.label) << "\"];\n";
  }
  for (const auto& e : g.edges) {
    os << "  n" << e.from << " -> n" << e.to;
    if (e.label == EdgeLabel::True) os << " [label=\"T\"]";
    if (e.label == EdgeLabel::False) os << " [label=\"F\"]";
    os << ";\n";
  }
  os << "}\n";
  return os.str();
}

std::string to_dot(const Pdg& pdg) {
  const Cfg& g = *pdg.cfg;
  std::ostringstream os;
  os << "digraph pdg {\n";
  for (const auto& n : g.nodes) {
    if (n.id < 0 || n.kind == NodeKind::Entry || n.kind == NodeKind::Exit) continue;
    os << "  n" << n.id << " [shape=box, label=\"" << n.id << ": "
       << dot_escape(n.label) << "\"];\n";
  }
  for (const auto& e : pdg.control)
    os << "  n" << e.from << " -> n" << e.to << " [style=dashed, label=\"ctrl\"];\n";
  for (const auto& e : pdg.data) {
    const bool real_var =
        g.program && e.var < static_cast<int>(g.program->vars.size());
    const std::string var =
        real_var ? g.program->vars[static_cast<std::size_t>(e.var)].name
                 : std::string("input-stream");
    os << "  n" << e.from << " -> n" << e.to << " [label=\"" << var << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace seuguard::cfg
