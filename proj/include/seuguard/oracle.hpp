#pragma once

#include <optional>
#include <span>

#include "seuguard/ast.hpp"
#include "seuguard/property.hpp"
#include "seuguard/verdict.hpp"

namespace seuguard::oracle {

// One upset: flip `bit` of the target immediately before its occurrence-th
// dynamic use. Occurrences count syntactic use slots of the target in each
// evaluated expression, in the order the expressions execute; the flip lands
// before the whole expression evaluates, matching hook placement.
struct Fault {
  long occurrence = 0;  // 1-based
  int bit = 0;
};

struct OutputPoint {
  int32_t value;
  bool phi;
  int stmt_id;
};

struct ExecutionRecord {
  std::vector<int> trace;  // statement ids, filled only when requested
  std::vector<OutputPoint> output_points;
  std::vector<int32_t> input_log;                 // all input() values consumed
  std::vector<int32_t> enum_log;                  // the enumerated ones only
  std::vector<std::vector<int32_t>> segment_log;  // input() values per control cycle
  bool terminated = false;  // false: unwind or step budget truncated the run
  bool trapped = false;
  std::string trap_message;
  bool needs_stream_value = false;  // enumeration requests one more value
  bool replay_overrun = false;
  bool stream_capped = false;
  long steps = 0;
  long target_use_occurrences = 0;  // H for the investigated variable
  bool phi_all = true;              // conjunction over all output points
  int fault_stmt_id = -1;           // where the flip landed, if it did
  int fault_line = 0;
};

enum class StreamMode {
  Enumerate,  // stream values come from a prefix; past it the run aborts
              // with needs_stream_value (or low-fills past the cycle bound)
  Replay,     // stream values replay a recorded per-cycle log; overruns
              // low-fill and set replay_overrun
};

struct RunRequest {
  std::span<const int32_t> params;
  StreamMode mode = StreamMode::Enumerate;
  std::span<const int32_t> stream_prefix;                    // Enumerate
  const std::vector<std::vector<int32_t>>* replay = nullptr;  // Replay
  std::optional<Fault> fault;
  int target = -1;  // variable whose uses are counted / faulted
  bool record_trace = false;
};

// Deterministic concrete execution of the original program.
ExecutionRecord run_concrete(const ast::Program& p, const prop::SafetySpec& spec,
                             const RunRequest& request, const engine::RunLimits& limits,
                             const engine::InputDomain& domain);

// Ground truth: brute-force paired executions over the whole input domain and
// fault space, classified by the two relevance disjuncts (violation
// introduced under the fault with a clean fault-free run, or violation
// masked by the fault). First witness in canonical order wins:
// inputs ascending lexicographically, occurrences in trace order, bits
// ascending.
engine::Verdict oracle_classify(const ast::Program& p, const prop::SafetySpec& spec,
                                int target, const engine::InputDomain& domain,
                                const engine::FaultModel& fault,
                                const engine::RunLimits& limits);

}  // namespace seuguard::oracle
