#include <doctest.h>

#include <algorithm>

#include "seuguard/cfg.hpp"
#include "support/brute_cd.hpp"
#include "support/fixtures.hpp"
#include "support/gen.hpp"

using namespace seuguard;
using seuguard::testing::kGuardedIncrement;
using seuguard::testing::parse_ok;

namespace {

int node_by_label(const cfg::Cfg& g, const std::string& label) {
  for (const auto& n : g.nodes)
    if (n.label == label) return n.id;
  FAIL("no node labelled '", label, "'");
  return -1;
}

int count_statement_nodes(const ast::Program& p) { return p.stmt_count; }

}  // namespace

TEST_CASE("cfg of the benchmark") {
  ast::Program p = parse_ok(kGuardedIncrement);
  cfg::Cfg g = cfg::build_cfg(p);
  CHECK(g.size() == count_statement_nodes(p) + 2);
  int conds = 0;
  for (const auto& n : g.nodes)
    if (g.is_condition(n.id)) ++conds;
  CHECK(conds == 3);  // count < 7, x > 10, y == 1
  // every condition has exactly one true and one false edge
  for (const auto& n : g.nodes) {
    if (!g.is_condition(n.id)) continue;
    int t = 0, f = 0;
    for (const auto& e : g.edges)
      if (e.from == n.id) {
        if (e.label == cfg::EdgeLabel::True) ++t;
        if (e.label == cfg::EdgeLabel::False) ++f;
      }
    CHECK(t == 1);
    CHECK(f == 1);
  }
}

TEST_CASE("straight-line program is a path graph") {
  ast::Program p = parse_ok("int f(int a) { a = 1; a = 2; return a; }");
  cfg::Cfg g = cfg::build_cfg(p);
  CHECK(g.size() == 4 + 2);  // param def + 2 assigns + return + entry/exit
  for (const auto& n : g.nodes) {
    if (n.id == g.exit) continue;
    CHECK(g.succ[static_cast<std::size_t>(n.id)].size() == 1);
  }
}

TEST_CASE("body-less while(true) has a true self-loop") {
  // validator demands an output point, so park one behind the loop head
  ast::Program p = parse_ok("int f() { while (true) { output 1; } }");
  cfg::Cfg g = cfg::build_cfg(p);
  (void)g;
  ast::Program q = parse_ok("int g(int a) { while (a > 0) { } return 0; }");
  cfg::Cfg h = cfg::build_cfg(q);
  int cond = node_by_label(h, "a > 0");
  bool self_true = false;
  for (const auto& e : h.edges)
    if (e.from == cond && e.to == cond && e.label == cfg::EdgeLabel::True)
      self_true = true;
  CHECK(self_true);
}

TEST_CASE("post-dominators on a path graph") {
  ast::Program p = parse_ok("int f(int a) { a = 1; return a; }");
  cfg::Cfg g = cfg::build_cfg(p);
  auto pd = cfg::post_dominators(g);
  // every node is post-dominated by everything downstream of it
  int param = node_by_label(g, "input(a)");
  int assign = node_by_label(g, "a = 1");
  int ret = node_by_label(g, "return a");
  CHECK(pd.pd[static_cast<std::size_t>(param)][static_cast<std::size_t>(assign)]);
  CHECK(pd.pd[static_cast<std::size_t>(param)][static_cast<std::size_t>(ret)]);
  CHECK(pd.pd[static_cast<std::size_t>(param)][static_cast<std::size_t>(g.exit)]);
  CHECK(pd.pd[static_cast<std::size_t>(assign)][static_cast<std::size_t>(ret)]);
  CHECK_FALSE(pd.pd[static_cast<std::size_t>(ret)][static_cast<std::size_t>(assign)]);
}

TEST_CASE("benchmark: the count increment post-dominates output = 2") {
  ast::Program p = parse_ok(kGuardedIncrement);
  cfg::Cfg g = cfg::build_cfg(p);
  auto pd = cfg::post_dominators(g);
  auto brute = seuguard::testing::brute_post_dominators(g);
  CHECK(pd.pd == brute);
  int inc = node_by_label(g, "count = count + 1");
  int out2 = node_by_label(g, "output = 2");
  CHECK(pd.pd[static_cast<std::size_t>(out2)][static_cast<std::size_t>(inc)]);
}

TEST_CASE("diamond join post-dominates the condition") {
  ast::Program p = parse_ok(
      "int f(int a) { int r = 0; if (a > 0) { r = 1; } else { r = 2; } return r; }");
  cfg::Cfg g = cfg::build_cfg(p);
  auto pd = cfg::post_dominators(g);
  int cond = node_by_label(g, "a > 0");
  int join = node_by_label(g, "return r");
  CHECK(pd.pd[static_cast<std::size_t>(cond)][static_cast<std::size_t>(join)]);
}

TEST_CASE("post-dominators exclude nodes that cannot reach exit") {
  // hand-built graph: entry(0) -> a(1) -> exit(2), plus b(3) <-> c(4) cycle
  // reachable nowhere; b and c are excluded from the relation
  cfg::Cfg g;
  g.nodes.resize(5);
  for (int i = 0; i < 5; ++i) {
    g.nodes[static_cast<std::size_t>(i)].id = i;
    g.nodes[static_cast<std::size_t>(i)].kind = cfg::NodeKind::Assign;
  }
  g.nodes[0].kind = cfg::NodeKind::Entry;
  g.nodes[2].kind = cfg::NodeKind::Exit;
  g.entry = 0;
  g.exit = 2;
  g.edges = {{0, 1, cfg::EdgeLabel::None},
             {1, 2, cfg::EdgeLabel::None},
             {0, 3, cfg::EdgeLabel::None},
             {3, 4, cfg::EdgeLabel::None},
             {4, 3, cfg::EdgeLabel::None}};
  g.finalize();
  auto pd = cfg::post_dominators(g);
  CHECK(pd.excluded == std::vector<int>{3, 4});
  CHECK(pd.pd[0][2]);
  CHECK_FALSE(pd.pd[3][2]);
}

TEST_CASE("benchmark control-dependence chain") {
  ast::Program p = parse_ok(kGuardedIncrement);
  cfg::Cfg g = cfg::build_cfg(p);
  auto edges = cfg::control_dependence(g);
  auto has = [&](const std::string& from, const std::string& to) {
    cfg::ControlEdge probe{node_by_label(g, from), node_by_label(g, to)};
    return std::find(edges.begin(), edges.end(), probe) != edges.end();
  };
  CHECK(has("y == 1", "output = 2"));
  CHECK(has("x > 10", "y == 1"));
  CHECK(has("count < 7", "x > 10"));
  CHECK(has("x > 10", "output = output + 1"));
  CHECK(has("count < 7", "count = count + 1"));
  CHECK_FALSE(has("count < 7", "print alarm"));
  CHECK_FALSE(has("count < 7", "return output"));
}

TEST_CASE("straight line has no control edges; one if has exactly one") {
  ast::Program p = parse_ok("int f(int a) { a = 1; a = 2; return a; }");
  CHECK(cfg::control_dependence(cfg::build_cfg(p)).empty());
  ast::Program q = parse_ok("int f(int a) { if (a > 0) { a = 1; } return a; }");
  auto edges = cfg::control_dependence(cfg::build_cfg(q));
  CHECK(edges.size() == 1);
}

TEST_CASE("benchmark data dependence") {
  ast::Program p = parse_ok(kGuardedIncrement);
  cfg::Cfg g = cfg::build_cfg(p);
  auto edges = cfg::data_dependence(g);
  int inc = node_by_label(g, "output = output + 1");
  int ret = node_by_label(g, "return output");
  int output_var = ast::find_variable(p, "output");
  cfg::DataEdge probe{inc, ret, output_var};
  CHECK(std::find(edges.begin(), edges.end(), probe) != edges.end());
  // loop-carried: the increment feeds its own right-hand side
  cfg::DataEdge carried{inc, inc, output_var};
  CHECK(std::find(edges.begin(), edges.end(), carried) != edges.end());
}

TEST_CASE("def-use chains and killed definitions") {
  ast::Program p = parse_ok("int f() { int a = 1; int b = a; return b; }");
  cfg::Cfg g = cfg::build_cfg(p);
  auto edges = cfg::data_dependence(g);
  int def_a = node_by_label(g, "a = 1");
  int def_b = node_by_label(g, "b = a");
  int var_a = ast::find_variable(p, "a");
  CHECK(std::find(edges.begin(), edges.end(), cfg::DataEdge{def_a, def_b, var_a}) !=
        edges.end());

  ast::Program q = parse_ok("int f() { int a = 1; int b = 0; a = 2; b = a; return b; }");
  cfg::Cfg h = cfg::build_cfg(q);
  auto killed = cfg::data_dependence(h);
  int first = node_by_label(h, "a = 1");
  int second = node_by_label(h, "a = 2");
  int use = node_by_label(h, "b = a");
  int qa = ast::find_variable(q, "a");
  CHECK(std::find(killed.begin(), killed.end(), cfg::DataEdge{second, use, qa}) !=
        killed.end());
  CHECK(std::find(killed.begin(), killed.end(), cfg::DataEdge{first, use, qa}) ==
        killed.end());
}

TEST_CASE("pdg: alarm has no path to the return") {
  ast::Program p = parse_ok(kGuardedIncrement);
  cfg::Cfg g = cfg::build_cfg(p);
  cfg::Pdg pdg = cfg::build_pdg(g);
  int ret = node_by_label(g, "return output");
  int alarm_def = node_by_label(g, "alarm = true");
  // reverse closure from the return must not contain the alarm def
  std::vector<bool> seen(g.nodes.size(), false);
  std::vector<int> work{ret};
  seen[static_cast<std::size_t>(ret)] = true;
  while (!work.empty()) {
    int n = work.back();
    work.pop_back();
    for (int q : pdg.preds[static_cast<std::size_t>(n)])
      if (!seen[static_cast<std::size_t>(q)]) {
        seen[static_cast<std::size_t>(q)] = true;
        work.push_back(q);
      }
  }
  CHECK_FALSE(seen[static_cast<std::size_t>(alarm_def)]);
}

TEST_CASE("pdg trivia") {
  // synthetic empty program: entry/exit only once decls are absent
  ast::Program p;
  p.name = "empty";
  p.stmt_count = 0;
  cfg::Cfg g = cfg::build_cfg(p);
  cfg::Pdg pdg = cfg::build_pdg(g);
  CHECK(g.size() == 2);
  CHECK(pdg.control.empty());
  CHECK(pdg.data.empty());

  ast::Program q = parse_ok("int f() { int a = input(); output a; }");
  cfg::Cfg h = cfg::build_cfg(q);
  cfg::Pdg hp = cfg::build_pdg(h);
  CHECK(hp.control.empty());
  CHECK(hp.data.size() == 1);  // a = input() feeds the output, nothing else

  ast::Program r = parse_ok("int f() { int a = input(); output a; return a; }");
  cfg::Cfg rg = cfg::build_cfg(r);
  cfg::Pdg rp = cfg::build_pdg(rg);
  CHECK(rp.data.size() == 2);  // the def feeds both output points
}

TEST_CASE("control dependence equals brute force on generated programs") {
  int done = 0;
  for (uint64_t seed = 100; done < 40; ++seed) {
    auto g = seuguard::testing::generate_program(seed);
    ast::Program p = parse_ok(g.source);
    cfg::Cfg graph = cfg::build_cfg(p);
    CAPTURE(seed);
    CAPTURE(g.source);
    auto fast = cfg::control_dependence(graph);
    auto brute = seuguard::testing::brute_control_dependence(graph);
    REQUIRE(fast == brute);
    auto pd_fast = cfg::post_dominators(graph).pd;
    auto pd_brute = seuguard::testing::brute_post_dominators(graph);
    REQUIRE(pd_fast == pd_brute);
    ++done;
  }
}

TEST_CASE("deterministic edge sets") {
  ast::Program p = parse_ok(kGuardedIncrement);
  cfg::Cfg g1 = cfg::build_cfg(p);
  cfg::Cfg g2 = cfg::build_cfg(p);
  CHECK(cfg::data_dependence(g1) == cfg::data_dependence(g2));
  CHECK(cfg::control_dependence(g1) == cfg::control_dependence(g2));
}

TEST_CASE("dot emission mentions every node") {
  ast::Program p = parse_ok(kGuardedIncrement);
  cfg::Cfg g = cfg::build_cfg(p);
  std::string dot = cfg::to_dot(g);
  CHECK(dot.find("digraph cfg") != std::string::npos);
  CHECK(dot.find("count < 7") != std::string::npos);
  std::string pdot = cfg::to_dot(cfg::build_pdg(g));
  CHECK(pdot.find("digraph pdg") != std::string::npos);
  CHECK(pdot.find("ctrl") != std::string::npos);
}
