#pragma once

#include "seuguard/instrument.hpp"
#include "seuguard/slicer.hpp"
#include "seuguard/verdict.hpp"

namespace seuguard::checker {

// result = value XOR (1 << pos). Throws std::out_of_range unless 0 <= pos <= 31.
int32_t flip_bit(int32_t value, int pos);

struct Config {
  engine::FaultModel fault;
  engine::InputDomain domain;
  engine::RunLimits limits;
};

// Explores every (input vector, hook occurrence, bit) combination of the
// composite program, loop iterations capped at the unwind bound. The verdict
// is decided by the relational condition over the full bounded trace: the
// base and shadow property aggregates must agree; the first combination in
// canonical order where they split becomes the counterexample. Crv beats
// Unknown beats NonCrv: a concrete witness stands even when other
// combinations were truncated; with no witness, any truncation yields
// Unknown.
engine::Verdict check(const instr::InstrumentedProgram& ip,
                      const engine::FaultModel& fault, const engine::InputDomain& domain,
                      const engine::RunLimits& limits);

// Slice pruning first (out-of-slice variables are NonCrv without checking),
// then check() on the self-composed program.
engine::Verdict classify_variable(const ast::Program& p, const prop::SafetySpec& spec,
                                  int target, const Config& config);
engine::Verdict classify_variable(const ast::Program& p, const prop::SafetySpec& spec,
                                  int target, const Config& config,
                                  const slicer::Slice& slice);

}  // namespace seuguard::checker
