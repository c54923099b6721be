#include <doctest.h>

#include "seuguard/oracle.hpp"
#include "support/fixtures.hpp"

using namespace seuguard;
using seuguard::testing::kGuardedIncrement;
using seuguard::testing::parse_ok;

namespace {

struct Fixture {
  ast::Program program = parse_ok(kGuardedIncrement);
  prop::SafetySpec spec = *prop::parse_spec("always output <= 10").spec;
  engine::RunLimits limits{8, 10000};
  engine::InputDomain domain;

  Fixture() {
    domain.param_ranges = {{0, 20}, {0, 20}};
  }

  oracle::ExecutionRecord run(std::vector<int32_t> params,
                              std::optional<oracle::Fault> fault, int target) {
    oracle::RunRequest req;
    req.params = params;
    req.mode = oracle::StreamMode::Enumerate;
    req.fault = fault;
    req.target = target;
    req.record_trace = true;
    return oracle::run_concrete(program, spec, req, limits, domain);
  }
};

}  // namespace

TEST_CASE("fault-free executions of the benchmark") {
  Fixture fx;
  // x = 12, y = 1: guarded branch every cycle, output pinned to 2
  auto rec = fx.run({12, 1}, std::nullopt, -1);
  REQUIRE(rec.terminated);
  REQUIRE(rec.output_points.size() == 1);
  CHECK(rec.output_points[0].value == 2);
  CHECK(rec.output_points[0].phi);
  CHECK(rec.phi_all);

  // x = 5, y = 0: the increment path violates after seven cycles
  auto bad = fx.run({5, 0}, std::nullopt, -1);
  REQUIRE(bad.terminated);
  REQUIRE(bad.output_points.size() == 1);
  CHECK(bad.output_points[0].value == 11);
  CHECK_FALSE(bad.output_points[0].phi);
  CHECK_FALSE(bad.phi_all);
}

TEST_CASE("fault on x at its first use, bit 3") {
  Fixture fx;
  int x = ast::find_variable(fx.program, "x");
  auto rec = fx.run({12, 1}, oracle::Fault{1, 3}, x);
  REQUIRE(rec.terminated);
  // 12 xor 8 = 4 <= 10, so every cycle increments: 4 + 7 = 11
  REQUIRE(rec.output_points.size() == 1);
  CHECK(rec.output_points[0].value == 11);
  CHECK_FALSE(rec.phi_all);
  CHECK(rec.fault_stmt_id >= 0);
}

TEST_CASE("occurrence counting covers loop iterations") {
  Fixture fx;
  int x = ast::find_variable(fx.program, "x");
  auto rec = fx.run({12, 1}, std::nullopt, x);
  CHECK(rec.target_use_occurrences == 7);  // x > 10 tested once per cycle
  int count = ast::find_variable(fx.program, "count");
  auto rec2 = fx.run({12, 1}, std::nullopt, count);
  CHECK(rec2.target_use_occurrences == 8 + 7);  // 8 loop tests + 7 increments
}

TEST_CASE("single upset: traces agree up to the faulted occurrence") {
  Fixture fx;
  int count = ast::find_variable(fx.program, "count");
  auto clean = fx.run({3, 0}, std::nullopt, count);
  // occurrence 5 is the third loop test (count = 2); bit 3 lifts it to 10,
  // exiting the loop early without overrunning the unwind bound
  auto faulted = fx.run({3, 0}, oracle::Fault{5, 3}, count);
  REQUIRE(clean.terminated);
  REQUIRE(faulted.terminated);
  REQUIRE(faulted.fault_stmt_id >= 0);
  // first trace divergence
  std::size_t k = 0;
  while (k < clean.trace.size() && k < faulted.trace.size() &&
         clean.trace[k] == faulted.trace[k])
    ++k;
  CHECK(k > 0);  // a real shared prefix exists
  // the flip site executes inside the shared prefix: everything before the
  // upset is identical in both runs
  bool fault_in_prefix = false;
  for (std::size_t i = 0; i < k; ++i)
    if (faulted.trace[i] == faulted.fault_stmt_id) fault_in_prefix = true;
  CHECK(fault_in_prefix);
  // and the inputs consumed in the prefix match positionally
  std::size_t shared_inputs = std::min(clean.input_log.size(), faulted.input_log.size());
  for (std::size_t i = 0; i < shared_inputs; ++i)
    CHECK(clean.input_log[i] == faulted.input_log[i]);
}

TEST_CASE("fault-free runs are reproducible") {
  Fixture fx;
  auto a = fx.run({7, 3}, std::nullopt, -1);
  auto b = fx.run({7, 3}, std::nullopt, -1);
  CHECK(a.trace == b.trace);
  CHECK(a.output_points.size() == b.output_points.size());
  CHECK(a.steps == b.steps);
  CHECK(a.phi_all == b.phi_all);
}

TEST_CASE("oracle classification of the benchmark variables") {
  Fixture fx;
  engine::FaultModel fault;  // bits 0..31, nondet trigger

  auto classify = [&](const char* name) {
    int idx = ast::find_variable(fx.program, name);
    REQUIRE(idx >= 0);
    return oracle::oracle_classify(fx.program, fx.spec, idx, fx.domain, fault,
                                   fx.limits);
  };

  auto x = classify("x");
  CHECK(x.classification == engine::Classification::Crv);
  REQUIRE(x.counterexample);
  CHECK(x.counterexample->param_values == std::vector<int32_t>{0, 0});
  CHECK(x.counterexample->occurrence == 1);
  CHECK(x.counterexample->bit_position == 4);
  CHECK(x.direction == engine::Direction::FaultMasking);

  auto y = classify("y");
  CHECK(y.classification == engine::Classification::NonCrv);

  auto output = classify("output");
  CHECK(output.classification == engine::Classification::Crv);
  CHECK(output.direction == engine::Direction::FaultMasking);
  REQUIRE(output.counterexample);
  CHECK(output.counterexample->bit_position == 2);

  auto count = classify("count");
  CHECK(count.classification == engine::Classification::Crv);
  CHECK(count.direction == engine::Direction::FaultMasking);
  REQUIRE(count.counterexample);
  CHECK(count.counterexample->param_values == std::vector<int32_t>{0, 0});
  CHECK(count.counterexample->occurrence == 1);
  CHECK(count.counterexample->bit_position == 0);

  auto alarm = classify("alarm");
  CHECK(alarm.classification == engine::Classification::NonCrv);
}

TEST_CASE("eq-1 fidelity: crvs of the benchmark are exactly x, output, count") {
  Fixture fx;
  engine::FaultModel fault;
  std::vector<std::string> crvs;
  for (const auto& v : fx.program.vars) {
    auto verdict = oracle::oracle_classify(fx.program, fx.spec, v.index, fx.domain,
                                           fault, fx.limits);
    if (verdict.classification == engine::Classification::Crv) crvs.push_back(v.name);
  }
  CHECK(crvs == std::vector<std::string>{"x", "output", "count"});
}

TEST_CASE("constant output program has no crvs") {
  ast::Program p = parse_ok("int f(int a) { int b = a + 1; b = b * 2; return 7; }");
  auto spec = *prop::parse_spec("always b <= 10").spec;
  engine::InputDomain domain;
  domain.param_ranges = {{0, 15}};
  engine::RunLimits limits{8, 10000};
  engine::FaultModel fault;
  for (const auto& v : p.vars) {
    auto verdict = oracle::oracle_classify(p, spec, v.index, domain, fault, limits);
    CHECK(verdict.classification == engine::Classification::NonCrv);
  }
}

TEST_CASE("masking counterexample for count matches the hand execution") {
  Fixture fx;
  int count = ast::find_variable(fx.program, "count");
  // x = 5 violates fault-free; count flipped high up front exits the loop
  // with the output still safe (the illustrative witness; the canonical one
  // found by enumeration is bit 0 at input (0,0))
  auto clean = fx.run({5, 0}, std::nullopt, count);
  CHECK_FALSE(clean.phi_all);
  auto flipped = fx.run({5, 0}, oracle::Fault{1, 3}, count);  // 0 -> 8, loop skipped
  REQUIRE(flipped.terminated);
  REQUIRE(flipped.output_points.size() == 1);
  CHECK(flipped.output_points[0].value == 4);
  CHECK(flipped.phi_all);
}

TEST_CASE("division by zero is a trap, not a verdict") {
  ast::Program p = parse_ok("int f(int a) { int b = 10 / a; return b; }");
  auto spec = *prop::parse_spec("always b <= 100").spec;
  engine::InputDomain domain;
  domain.param_ranges = {{0, 3}};
  engine::RunLimits limits{8, 10000};
  oracle::RunRequest req;
  std::vector<int32_t> params{0};
  req.params = params;
  auto rec = oracle::run_concrete(p, spec, req, limits, domain);
  CHECK(rec.trapped);
  CHECK(rec.trap_message == "division by zero");
  // classification survives: the a=0 input is excluded with a diagnostic
  engine::FaultModel fault;
  int a = ast::find_variable(p, "a");
  auto verdict = oracle::oracle_classify(p, spec, a, domain, fault, limits);
  CHECK_FALSE(verdict.diagnostics.empty());
}

TEST_CASE("step budget truncation yields unknown") {
  ast::Program p = parse_ok(
      "int f(int a) { int o = 0; int i = 0; while (i < a) { o = o + 1; i = i + 1; } "
      "return o; }");
  auto spec = *prop::parse_spec("always o <= 100").spec;
  engine::InputDomain domain;
  domain.param_ranges = {{0, 40}};
  engine::RunLimits tight{8, 10000};  // unwind 8 < a for a > 8
  engine::FaultModel fault;
  int a = ast::find_variable(p, "a");
  auto verdict = oracle::oracle_classify(p, spec, a, domain, fault, tight);
  CHECK(verdict.classification == engine::Classification::Unknown);
  CHECK(verdict.truncation_seen);
}
