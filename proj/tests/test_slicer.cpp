#include <doctest.h>

#include <algorithm>
#include <set>

#include "seuguard/slicer.hpp"
#include "support/fixtures.hpp"
#include "support/gen.hpp"

using namespace seuguard;
using seuguard::testing::kGuardedIncrement;
using seuguard::testing::parse_ok;

namespace {

std::set<std::string> names(const ast::Program& p, const std::vector<int>& vars) {
  std::set<std::string> out;
  for (int v : vars) out.insert(p.vars[static_cast<std::size_t>(v)].name);
  return out;
}

int node_by_label(const cfg::Cfg& g, const std::string& label) {
  for (const auto& n : g.nodes)
    if (n.label == label) return n.id;
  FAIL("no node labelled '", label, "'");
  return -1;
}

}  // namespace

TEST_CASE("benchmark slice at the return keeps four variables") {
  ast::Program p = parse_ok(kGuardedIncrement);
  cfg::Cfg g = cfg::build_cfg(p);
  cfg::Pdg pdg = cfg::build_pdg(g);
  slicer::Slice s = slicer::slice_at_output_points(pdg, ast::find_variable(p, "output"));
  CHECK(names(p, s.relevant_variables) ==
        std::set<std::string>{"x", "y", "output", "count"});
  CHECK(slicer::relevant_variables(s).size() == 4);
  // excluded statements: the alarm latch and the print
  int alarm_def = node_by_label(g, "alarm = true");
  int print_stmt = node_by_label(g, "print alarm");
  CHECK_FALSE(std::binary_search(s.statements.begin(), s.statements.end(), alarm_def));
  CHECK_FALSE(std::binary_search(s.statements.begin(), s.statements.end(), print_stmt));
}

TEST_CASE("criterion at the print statement") {
  ast::Program p = parse_ok(kGuardedIncrement);
  cfg::Cfg g = cfg::build_cfg(p);
  cfg::Pdg pdg = cfg::build_pdg(g);
  slicer::SlicingCriterion crit{node_by_label(g, "print alarm"),
                                {ast::find_variable(p, "alarm")}};
  slicer::Slice s = slicer::backward_slice(pdg, crit);
  CHECK(names(p, s.relevant_variables) == std::set<std::string>{"x", "alarm", "count"});
}

TEST_CASE("two-statement program slices whole") {
  ast::Program p = parse_ok("int f() { int a = input(); output a; return a; }");
  cfg::Cfg g = cfg::build_cfg(p);
  cfg::Pdg pdg = cfg::build_pdg(g);
  slicer::SlicingCriterion crit{node_by_label(g, "output a"),
                                {ast::find_variable(p, "a")}};
  slicer::Slice s = slicer::backward_slice(pdg, crit);
  CHECK(s.statements.size() == 2);  // the init-def and the output
  CHECK(names(p, s.relevant_variables) == std::set<std::string>{"a"});
}

TEST_CASE("criterion on a constant output keeps only criterion variables") {
  ast::Program p = parse_ok("int f(int a) { a = a + 1; return 5; }");
  cfg::Cfg g = cfg::build_cfg(p);
  cfg::Pdg pdg = cfg::build_pdg(g);
  slicer::SlicingCriterion crit{node_by_label(g, "return 5"), {}};
  slicer::Slice s = slicer::backward_slice(pdg, crit);
  CHECK(s.relevant_variables.empty());
  slicer::SlicingCriterion with_var{node_by_label(g, "return 5"),
                                    {ast::find_variable(p, "a")}};
  slicer::Slice s2 = slicer::backward_slice(pdg, with_var);
  CHECK(names(p, s2.relevant_variables) == std::set<std::string>{"a"});
}

TEST_CASE("invalid criterion location") {
  ast::Program p = parse_ok("int f() { return 0; }");
  cfg::Cfg g = cfg::build_cfg(p);
  cfg::Pdg pdg = cfg::build_pdg(g);
  CHECK_THROWS_AS(slicer::backward_slice(pdg, slicer::SlicingCriterion{999, {}}),
                  std::invalid_argument);
}

TEST_CASE("slices are predecessor-closed") {
  for (uint64_t seed = 200; seed < 230; ++seed) {
    auto gen = seuguard::testing::generate_program(seed);
    ast::Program p = parse_ok(gen.source);
    cfg::Cfg g = cfg::build_cfg(p);
    cfg::Pdg pdg = cfg::build_pdg(g);
    int out_var = ast::find_variable(p, "v0");
    REQUIRE(out_var >= 0);
    slicer::Slice s = slicer::slice_at_output_points(pdg, out_var);
    std::set<int> in(s.statements.begin(), s.statements.end());
    for (int n : s.statements)
      for (int q : pdg.preds[static_cast<std::size_t>(n)]) {
        const auto& node = g.nodes[static_cast<std::size_t>(q)];
        if (node.kind == cfg::NodeKind::Entry || node.kind == cfg::NodeKind::Exit)
          continue;
        CAPTURE(seed);
        CHECK(in.count(q) == 1);
      }
  }
}

TEST_CASE("slices grow monotonically with the criterion") {
  ast::Program p = parse_ok(kGuardedIncrement);
  cfg::Cfg g = cfg::build_cfg(p);
  cfg::Pdg pdg = cfg::build_pdg(g);
  int ret = node_by_label(g, "return output");
  slicer::Slice small = slicer::backward_slice(pdg, {ret, {}});
  slicer::Slice medium =
      slicer::backward_slice(pdg, {ret, {ast::find_variable(p, "output")}});
  slicer::Slice large = slicer::backward_slice(
      pdg, {ret, {ast::find_variable(p, "output"), ast::find_variable(p, "alarm")}});
  CHECK(std::includes(medium.statements.begin(), medium.statements.end(),
                      small.statements.begin(), small.statements.end()));
  CHECK(std::includes(large.statements.begin(), large.statements.end(),
                      medium.statements.begin(), medium.statements.end()));
  CHECK(medium.relevant_variables.size() <= large.relevant_variables.size());
}

TEST_CASE("sliced source rendering marks exclusions") {
  ast::Program p = parse_ok(kGuardedIncrement);
  cfg::Cfg g = cfg::build_cfg(p);
  cfg::Pdg pdg = cfg::build_pdg(g);
  slicer::Slice s = slicer::slice_at_output_points(pdg, ast::find_variable(p, "output"));
  std::string text = slicer::render_sliced_source(p, s);
  CHECK(text.find("// [not in slice] alarm = true;") != std::string::npos);
  CHECK(text.find("// [not in slice] print alarm;") != std::string::npos);
  CHECK(text.find("// [not in slice] output = 2") == std::string::npos);
}
