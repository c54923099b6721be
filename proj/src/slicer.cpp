#include "seuguard/slicer.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>
#include <stdexcept>

#include "seuguard/pretty.hpp"

namespace seuguard::slicer {

Slice backward_slice(const cfg::Pdg& pdg, const SlicingCriterion& criterion) {
  const cfg::Cfg& g = *pdg.cfg;
  if (criterion.location < 0 || criterion.location >= g.size() ||
      g.nodes[static_cast<std::size_t>(criterion.location)].id < 0)
    throw std::invalid_argument("slicing criterion location is not in the graph");

  std::set<int> slice;
  std::deque<int> work;
  auto push = [&](int n) {
    if (slice.insert(n).second) work.push_back(n);
  };
  push(criterion.location);
  // Definitions of the criterion variables reaching the criterion location.
  for (const auto& [var, def_node] : pdg.reach_in[static_cast<std::size_t>(criterion.location)])
    if (std::find(criterion.variables.begin(), criterion.variables.end(), var) !=
        criterion.variables.end())
      push(def_node);
  while (!work.empty()) {
    int n = work.front();
    work.pop_front();
    for (int p : pdg.preds[static_cast<std::size_t>(n)]) push(p);
  }

  Slice out;
  std::set<int> vars(criterion.variables.begin(), criterion.variables.end());
  const int var_count =
      g.program ? static_cast<int>(g.program->vars.size()) : INT32_MAX;
  for (int n : slice) {
    const cfg::Node& node = g.nodes[static_cast<std::size_t>(n)];
    if (node.kind == cfg::NodeKind::Entry || node.kind == cfg::NodeKind::Exit) continue;
    out.statements.push_back(n);
    for (int d : node.defs)
      if (d < var_count) vars.insert(d);  // the stream cursor is not a variable
    for (int u : node.uses)
      if (u < var_count) vars.insert(u);
  }
  out.relevant_variables.assign(vars.begin(), vars.end());
  return out;
}

std::vector<int> relevant_variables(const Slice& slice) {
  return slice.relevant_variables;
}

Slice slice_at_output_points(const cfg::Pdg& pdg, int output_variable) {
  const cfg::Cfg& g = *pdg.cfg;
  std::set<int> statements;
  std::set<int> vars;
  bool any = false;
  for (const auto& n : g.nodes) {
    if (n.kind != cfg::NodeKind::Output && n.kind != cfg::NodeKind::Return) continue;
    any = true;
    SlicingCriterion crit{n.id, {output_variable}};
    Slice s = backward_slice(pdg, crit);
    statements.insert(s.statements.begin(), s.statements.end());
    vars.insert(s.relevant_variables.begin(), s.relevant_variables.end());
  }
  if (!any) throw std::invalid_argument("program has no output point");
  Slice out;
  out.statements.assign(statements.begin(), statements.end());
  out.relevant_variables.assign(vars.begin(), vars.end());
  return out;
}

bool in_slice(const Slice& slice, int variable) {
  return std::binary_search(slice.relevant_variables.begin(),
                            slice.relevant_variables.end(), variable);
}

namespace {

using namespace ast;

void render_block(std::ostringstream& os, const Block& block,
                  const std::set<int>& kept, int indent);

void render_stmt(std::ostringstream& os, const Stmt& s, const std::set<int>& kept,
                 int indent) {
  std::string pad(static_cast<std::size_t>(indent) * 4, ' ');
  bool in = kept.count(s.id) > 0;
  const char* mark = in ? "" : "// [not in slice] ";
  if (const auto* i = std::get_if<If>(&s.node)) {
    os << pad << mark << "if (" << frontend::pretty_print(*i->cond) << ") {\n";
    render_block(os, i->then_body, kept, indent + 1);
    os << pad << mark << "}";
    if (!i->else_body.empty()) {
      os << " else {\n";
      render_block(os, i->else_body, kept, indent + 1);
      os << pad << mark << "}";
    }
    os << "\n";
  } else if (const auto* w = std::get_if<While>(&s.node)) {
    os << pad << mark << "while (" << frontend::pretty_print(*w->cond) << ") {\n";
    render_block(os, w->body, kept, indent + 1);
    os << pad << mark << "}\n";
  } else {
    std::string text = frontend::pretty_print(s, 0);
    if (!text.empty() && text.back() == '\n') text.pop_back();
    os << pad << mark << text << "\n";
  }
}

void render_block(std::ostringstream& os, const Block& block,
                  const std::set<int>& kept, int indent) {
  for (const auto& s : block) render_stmt(os, *s, kept, indent);
}

}  // namespace

std::string render_sliced_source(const ast::Program& p, const Slice& slice) {
  std::set<int> kept(slice.statements.begin(), slice.statements.end());
  std::ostringstream os;
  os << "int " << p.name << "(";
  for (std::size_t i = 0; i < p.param_count; ++i) {
    if (i) os << ", ";
    os << type_name(p.vars[i].type) << " " << p.vars[i].name;
  }
  os << ") {\n";
  for (std::size_t i = p.param_count; i < p.vars.size(); ++i) {
    const auto& v = p.vars[i];
    const char* mark = kept.count(v.decl_id) ? "" : "// [not in slice] ";
    os << "    " << mark << type_name(v.type) << " " << v.name << " = "
       << frontend::pretty_print(*v.init) << ";\n";
  }
  render_block(os, p.body, kept, 1);
  os << "}\n";
  return os.str();
}

}  // namespace seuguard::slicer
