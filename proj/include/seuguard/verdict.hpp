#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace seuguard::engine {

// How the single upset is scheduled over the hook occurrences of a run.
//   NondetAnywhere: the flip may happen at any hook occurrence, or not at all.
//   FirstUse:       the flip happens at the first hook occurrence.
//   Disabled:       no flip ever happens (used by soundness tests).
enum class Trigger { NondetAnywhere, FirstUse, Disabled };

const char* trigger_text(Trigger t);

struct FaultModel {
  int target = -1;  // variable under investigation
  int bit_lo = 0;
  int bit_hi = 31;  // inclusive; bits are 0..31 on 32-bit values
  Trigger trigger = Trigger::NondetAnywhere;
  // single-event model: at most one flip per execution, ever
  static constexpr int max_events = 1;
};

// Finite input space for exhaustive checking: one inclusive range per
// program parameter plus the range and per-iteration enumeration bound for
// the input() stream.
struct InputDomain {
  std::vector<std::pair<int32_t, int32_t>> param_ranges;
  int32_t stream_lo = 0;
  int32_t stream_hi = 15;
  int stream_bound = 2;  // enumerated input() reads per control cycle
};

struct RunLimits {
  int unwind = 16;           // loop iterations per loop activation
  long step_budget = 10000;  // statement executions per run
};

enum class Classification { NonCrv, Crv, Unknown };
enum class Direction { FaultIntroducing, FaultMasking };

const char* classification_text(Classification c);
const char* direction_text(Direction d);

struct OutputPointPair {
  std::optional<int32_t> base_value;
  std::optional<bool> base_phi;
  std::optional<int32_t> shadow_value;
  std::optional<bool> shadow_phi;
};

struct Counterexample {
  std::vector<int32_t> param_values;
  std::vector<int32_t> stream_values;   // fault-free input() log, replayed
  int hook_stmt_id = -1;                // static site of the flip
  int hook_line = 0;
  long occurrence = 0;                  // 1-based dynamic hook occurrence
  int bit_position = -1;
  Direction direction = Direction::FaultIntroducing;
  std::vector<int> base_trace;          // statement ids in execution order
  std::vector<int> shadow_trace;
  std::vector<OutputPointPair> output_points;
  int failing_output_point = 0;         // 1-based; first point with phi xor
  bool replay_overrun = false;
  bool replay_validated = false;
};

// Bounds a verdict was computed under; a NonCrv only quantifies over these.
struct BoundsUsed {
  RunLimits limits;
  std::vector<std::pair<int32_t, int32_t>> param_ranges;
  int bit_lo = 0;
  int bit_hi = 31;
};

struct Verdict {
  Classification classification = Classification::NonCrv;
  std::optional<Direction> direction;
  std::optional<Counterexample> counterexample;
  bool pruned_by_slice = false;
  bool truncation_seen = false;   // some execution hit unwind/step bounds
  long explored_runs = 0;
  BoundsUsed bounds_used;
  std::vector<std::string> diagnostics;  // runtime traps etc., deduplicated
};

}  // namespace seuguard::engine
