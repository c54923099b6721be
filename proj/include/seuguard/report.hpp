#pragma once

#include <map>
#include <optional>
#include <string>

#include "seuguard/checker.hpp"
#include "seuguard/oracle.hpp"
#include "seuguard/parser.hpp"

namespace seuguard::report {

enum class Engine { Checker, Oracle, Differential };
enum class Format { Table, Json, Csv };

struct AnalysisConfig {
  std::string source;        // program text
  std::string source_name;   // file stem, drives the display name
  std::string property;      // property text
  std::optional<std::string> variable;  // one variable, or all when absent
  std::map<std::string, std::pair<int32_t, int32_t>> domains;  // per parameter
  std::pair<int32_t, int32_t> default_domain{0, 15};
  int32_t stream_lo = 0;
  int32_t stream_hi = 15;
  int stream_bound = 2;
  int unwind = 16;
  long step_budget = 10000;
  int bit_lo = 0;
  int bit_hi = 31;
  engine::Trigger trigger = engine::Trigger::NondetAnywhere;
  Engine engine = Engine::Checker;
};

// Exit-code-bearing failure: 1 usage, 2 parse/spec.
struct AnalyzeError {
  int exit_code;
  std::string message;
};

struct VariableResult {
  std::string name;
  std::string type;
  bool is_param = false;
  bool in_slice = false;
  engine::Verdict verdict;                     // pipeline verdict
  std::optional<engine::Verdict> oracle_verdict;  // differential mode
  bool mismatch = false;
  double seconds = 0.0;  // table rendering only, never in json/csv
};

struct AnalysisReport {
  std::string program;       // source stem
  std::string display_name;  // prettified stem
  std::string function;      // procedure name
  int loc = 0;
  std::string phi_text;
  Engine engine = Engine::Checker;
  AnalysisConfig config;     // resolved values echoed into the report
  int T = 0;
  int S = 0;
  int M = 0;
  int crv_count = 0;
  int unknown_count = 0;
  // per-parameter resolved ranges, declaration order
  std::vector<std::pair<std::string, std::pair<int32_t, int32_t>>> resolved_domains;
  std::vector<std::string> relevant_variables;
  std::vector<std::string> crvs;  // includes Unknown-as-CRV entries
  std::vector<VariableResult> per_variable;
  bool differential_mismatch = false;
};

// eta = 100*M/S as a percent string; "n/a" when S = 0.
std::string format_eta(int relevant, int eliminated);

// Full pipeline: parse, slice, classify each selected variable, aggregate.
// Throws AnalyzeError on bad input.
AnalysisReport analyze(const AnalysisConfig& config);

std::string emit_report(const AnalysisReport& report, Format format);

// Derived exit code: 0 ok, 3 Unknown verdicts present, 4 differential
// mismatch.
int exit_code(const AnalysisReport& report);

std::string display_name_from_stem(const std::string& stem);

}  // namespace seuguard::report
