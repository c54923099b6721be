#include "seuguard/report.hpp"

#include <chrono>
#include <cstdio>
#include <sstream>

#include <json.hpp>

namespace seuguard::report {

namespace {

using Clock = std::chrono::steady_clock;
using nlohmann::ordered_json;

std::string join_diags(const std::vector<Diagnostic>& diags) {
  std::ostringstream os;
  for (std::size_t i = 0; i < diags.size(); ++i) {
    if (i) os << "\n";
    os << format_diagnostic(diags[i]);
  }
  return os.str();
}

const char* engine_name(Engine e) {
  switch (e) {
    case Engine::Checker: return "checker";
    case Engine::Oracle: return "oracle";
    case Engine::Differential: return "differential";
  }
  return "?";
}

const char* verdict_name(const engine::Verdict& v) {
  switch (v.classification) {
    case engine::Classification::NonCrv: return "non-crv";
    case engine::Classification::Crv: return "crv";
    case engine::Classification::Unknown: return "unknown";
  }
  return "?";
}

const char* direction_name(engine::Direction d) {
  return d == engine::Direction::FaultIntroducing ? "fault-introducing"
                                                  : "fault-masking";
}

}  // namespace

std::string format_eta(int relevant, int eliminated) {
  if (relevant <= 0) return "n/a";
  long scaled = 100L * eliminated;
  if (scaled % relevant == 0)
    return std::to_string(scaled / relevant) + "%";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f%%",
                100.0 * static_cast<double>(eliminated) / relevant);
  return buf;
}

std::string display_name_from_stem(const std::string& stem) {
  std::string out;
  bool word_start = true;
  for (char c : stem) {
    if (c == '_' || c == '-') {
      out.push_back(' ');
      word_start = true;
      continue;
    }
    out.push_back(word_start ? static_cast<char>(std::toupper(static_cast<unsigned char>(c)))
                             : c);
    word_start = false;
  }
  return out;
}

AnalysisReport analyze(const AnalysisConfig& config) {
  auto parsed = frontend::parse(config.source);
  if (!parsed.ok())
    throw AnalyzeError{2, "parse failed:\n" + join_diags(parsed.diagnostics)};
  const ast::Program& program = *parsed.program;

  auto spec_result = prop::parse_spec(config.property);
  if (!spec_result.spec)
    throw AnalyzeError{2, "invalid property: " + spec_result.error};
  const prop::SafetySpec& spec = *spec_result.spec;

  int out_var = ast::find_variable(program, spec.output_variable);
  if (out_var < 0)
    throw AnalyzeError{2, "property variable '" + spec.output_variable +
                              "' is not declared in the program"};

  if (config.unwind < 1) throw AnalyzeError{1, "--unwind must be at least 1"};
  if (config.step_budget < 1) throw AnalyzeError{1, "--step-budget must be at least 1"};
  if (config.bit_lo < 0 || config.bit_hi > 31 || config.bit_lo > config.bit_hi)
    throw AnalyzeError{1, "--fault-bits must lie within 0..31"};
  if (config.stream_bound < 0) throw AnalyzeError{1, "--stream-bound must be >= 0"};

  engine::InputDomain domain;
  domain.stream_lo = config.stream_lo;
  domain.stream_hi = config.stream_hi;
  domain.stream_bound = config.stream_bound;
  if (domain.stream_lo > domain.stream_hi)
    throw AnalyzeError{1, "input stream range is empty"};
  for (const auto& [name, range] : config.domains)
    if (name != "input" && ast::find_variable(program, name) < 0)
      throw AnalyzeError{1, "--domain names unknown variable '" + name + "'"};
  for (std::size_t i = 0; i < program.param_count; ++i) {
    const auto& v = program.vars[i];
    auto it = config.domains.find(v.name);
    std::pair<int32_t, int32_t> range =
        it != config.domains.end() ? it->second
        : v.type == ast::Type::Bool ? std::pair<int32_t, int32_t>{0, 1}
                                    : config.default_domain;
    if (range.first > range.second)
      throw AnalyzeError{1, "empty domain for parameter '" + v.name + "'"};
    if (v.type == ast::Type::Bool && (range.first < 0 || range.second > 1))
      throw AnalyzeError{1, "bool parameter '" + v.name + "' needs a domain within 0..1"};
    domain.param_ranges.push_back(range);
  }
  std::vector<std::pair<std::string, std::pair<int32_t, int32_t>>> resolved_domains;
  for (std::size_t i = 0; i < program.param_count; ++i)
    resolved_domains.emplace_back(program.vars[i].name, domain.param_ranges[i]);
  {
    // guard against accidentally astronomical exhaustive spaces
    long double total = 1;
    for (const auto& [lo, hi] : domain.param_ranges)
      total *= (static_cast<long double>(hi) - lo + 1);
    if (total > 1e8L)
      throw AnalyzeError{1, "parameter domain has more than 1e8 combinations; "
                            "tighten --domain ranges"};
  }

  engine::RunLimits limits{config.unwind, config.step_budget};
  engine::FaultModel fault;
  fault.bit_lo = config.bit_lo;
  fault.bit_hi = config.bit_hi;
  fault.trigger = config.trigger;

  std::vector<int> selected;
  if (config.variable) {
    int idx = ast::find_variable(program, *config.variable);
    if (idx < 0)
      throw AnalyzeError{1, "--var names unknown variable '" + *config.variable + "'"};
    selected.push_back(idx);
  } else {
    for (const auto& v : program.vars) selected.push_back(v.index);
  }

  cfg::Cfg graph = cfg::build_cfg(program);
  cfg::Pdg pdg = cfg::build_pdg(graph);
  slicer::Slice slice = slicer::slice_at_output_points(pdg, out_var);

  AnalysisReport rep;
  rep.program = config.source_name.empty() ? program.name : config.source_name;
  rep.display_name = display_name_from_stem(rep.program);
  rep.function = program.name;
  rep.loc = frontend::count_loc(config.source);
  rep.phi_text = prop::render(spec);
  rep.engine = config.engine;
  rep.config = config;
  rep.T = static_cast<int>(program.vars.size());
  rep.S = static_cast<int>(slice.relevant_variables.size());
  rep.resolved_domains = std::move(resolved_domains);
  for (int v : slice.relevant_variables)
    rep.relevant_variables.push_back(program.vars[static_cast<std::size_t>(v)].name);

  checker::Config check_config{fault, domain, limits};
  for (int idx : selected) {
    const auto& var = program.vars[static_cast<std::size_t>(idx)];
    VariableResult vr;
    vr.name = var.name;
    vr.type = ast::type_name(var.type);
    vr.is_param = var.is_param;
    vr.in_slice = slicer::in_slice(slice, idx);
    auto t0 = Clock::now();
    switch (config.engine) {
      case Engine::Checker:
        vr.verdict = checker::classify_variable(program, spec, idx, check_config, slice);
        break;
      case Engine::Oracle:
        if (vr.in_slice) {
          engine::FaultModel f = fault;
          f.target = idx;
          vr.verdict = oracle::oracle_classify(program, spec, idx, domain, f, limits);
        } else {
          vr.verdict.classification = engine::Classification::NonCrv;
          vr.verdict.pruned_by_slice = true;
        }
        break;
      case Engine::Differential: {
        vr.verdict = checker::classify_variable(program, spec, idx, check_config, slice);
        engine::FaultModel f = fault;
        f.target = idx;
        vr.oracle_verdict = oracle::oracle_classify(program, spec, idx, domain, f, limits);
        vr.mismatch =
            vr.verdict.classification != vr.oracle_verdict->classification ||
            vr.verdict.direction != vr.oracle_verdict->direction;
        if (vr.mismatch) rep.differential_mismatch = true;
        break;
      }
    }
    vr.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    rep.per_variable.push_back(std::move(vr));
  }

  for (const auto& vr : rep.per_variable) {
    if (!vr.in_slice) continue;
    if (vr.verdict.classification == engine::Classification::NonCrv &&
        !vr.verdict.pruned_by_slice) {
      ++rep.M;
    } else if (vr.verdict.classification == engine::Classification::Crv) {
      ++rep.crv_count;
      rep.crvs.push_back(vr.name);
    } else if (vr.verdict.classification == engine::Classification::Unknown) {
      // conservative: an undecided variable must be treated as critical
      ++rep.crv_count;
      ++rep.unknown_count;
      rep.crvs.push_back(vr.name);
    }
  }
  return rep;
}

namespace {

ordered_json counterexample_json(const ast::Program* prog,
                                 const engine::Counterexample& cx,
                                 const std::vector<std::string>& param_names) {
  ordered_json j;
  ordered_json inputs = ordered_json::object();
  for (std::size_t i = 0; i < param_names.size() && i < cx.param_values.size(); ++i)
    inputs[param_names[i]] = cx.param_values[i];
  j["inputs"] = inputs;
  j["stream"] = cx.stream_values;
  j["site"] = {{"stmt", cx.hook_stmt_id},
               {"line", cx.hook_line},
               {"occurrence", cx.occurrence}};
  j["bit"] = cx.bit_position;
  j["direction"] = direction_name(cx.direction);
  ordered_json points = ordered_json::array();
  for (const auto& p : cx.output_points) {
    ordered_json pj;
    pj["o"] = p.base_value ? ordered_json(*p.base_value) : ordered_json(nullptr);
    pj["phi"] = p.base_phi ? ordered_json(*p.base_phi) : ordered_json(nullptr);
    pj["o_shadow"] =
        p.shadow_value ? ordered_json(*p.shadow_value) : ordered_json(nullptr);
    pj["phi_shadow"] =
        p.shadow_phi ? ordered_json(*p.shadow_phi) : ordered_json(nullptr);
    points.push_back(pj);
  }
  j["output_points"] = points;
  j["failing_output_point"] = cx.failing_output_point;
  j["replay_validated"] = cx.replay_validated;
  j["replay_overrun"] = cx.replay_overrun;
  j["trace"] = cx.base_trace;
  j["trace_shadow"] = cx.shadow_trace;
  (void)prog;
  return j;
}

ordered_json verdict_json(const engine::Verdict& v,
                          const std::vector<std::string>& param_names) {
  ordered_json j;
  j["classification"] = verdict_name(v);
  if (v.direction) j["direction"] = direction_name(*v.direction);
  j["pruned_by_slice"] = v.pruned_by_slice;
  if (v.truncation_seen) j["truncation_seen"] = true;
  if (!v.pruned_by_slice) {
    ordered_json bounds;
    bounds["unwind"] = v.bounds_used.limits.unwind;
    bounds["step_budget"] = v.bounds_used.limits.step_budget;
    bounds["fault_bits"] = {v.bounds_used.bit_lo, v.bounds_used.bit_hi};
    ordered_json ranges = ordered_json::array();
    for (const auto& [lo, hi] : v.bounds_used.param_ranges) ranges.push_back({lo, hi});
    bounds["domains"] = ranges;
    j["bounds_used"] = bounds;
  }
  if (!v.diagnostics.empty()) j["diagnostics"] = v.diagnostics;
  if (v.counterexample)
    j["counterexample"] = counterexample_json(nullptr, *v.counterexample, param_names);
  return j;
}

std::string emit_json(const AnalysisReport& r) {
  ordered_json j;
  j["program"] = r.program;
  j["display_name"] = r.display_name;
  j["function"] = r.function;
  j["loc"] = r.loc;
  j["property"] = r.phi_text;
  j["engine"] = engine_name(r.engine);
  ordered_json cfg;
  cfg["unwind"] = r.config.unwind;
  cfg["step_budget"] = r.config.step_budget;
  cfg["fault_bits"] = {r.config.bit_lo, r.config.bit_hi};
  cfg["trigger"] = engine::trigger_text(r.config.trigger);
  cfg["stream"] = {{"range", {r.config.stream_lo, r.config.stream_hi}},
                   {"bound", r.config.stream_bound}};
  ordered_json domains = ordered_json::object();
  for (const auto& [name, range] : r.resolved_domains)
    domains[name] = {range.first, range.second};
  cfg["domains"] = domains;
  j["config"] = cfg;
  j["summary"] = {{"T", r.T},         {"S", r.S},
                  {"M", r.M},         {"eta", format_eta(r.S, r.M)},
                  {"crvs", r.crv_count}, {"unknown", r.unknown_count}};
  j["relevant_variables"] = r.relevant_variables;
  j["crvs"] = r.crvs;
  std::vector<std::string> param_names;
  for (const auto& vr : r.per_variable)
    if (vr.is_param) param_names.push_back(vr.name);
  ordered_json vars = ordered_json::array();
  for (const auto& vr : r.per_variable) {
    ordered_json vj;
    vj["name"] = vr.name;
    vj["type"] = vr.type;
    vj["kind"] = vr.is_param ? "param" : "local";
    vj["in_slice"] = vr.in_slice;
    vj["verdict"] = verdict_json(vr.verdict, param_names);
    if (vr.oracle_verdict) {
      vj["oracle_verdict"] = verdict_json(*vr.oracle_verdict, param_names);
      vj["mismatch"] = vr.mismatch;
    }
    vars.push_back(vj);
  }
  j["variables"] = vars;
  if (r.engine == Engine::Differential)
    j["differential"] = {{"agree", !r.differential_mismatch}};
  return j.dump(2) + "\n";
}

std::string emit_table(const AnalysisReport& r) {
  std::ostringstream os;
  os << "Program | LoC | T | S | M | eta | Phi\n";
  os << r.display_name << " | " << r.loc << " | " << r.T << " | " << r.S << " | "
     << r.M << " | " << format_eta(r.S, r.M) << " | " << r.phi_text << "\n\n";
  os << "  variable        kind   in-slice  verdict   direction          engine     time\n";
  for (const auto& vr : r.per_variable) {
    char line[256];
    std::string verdict = verdict_name(vr.verdict);
    std::string dir = vr.verdict.direction ? direction_name(*vr.verdict.direction) : "-";
    std::string eng = vr.verdict.pruned_by_slice ? "sliced-out" : engine_name(r.engine);
    char time_buf[32];
    std::snprintf(time_buf, sizeof time_buf, "%.2fs", vr.seconds);
    std::snprintf(line, sizeof line, "  %-15s %-6s %-9s %-9s %-18s %-10s %s\n",
                  vr.name.c_str(), vr.type.c_str(), vr.in_slice ? "yes" : "no",
                  verdict.c_str(), dir.c_str(), eng.c_str(), time_buf);
    os << line;
    if (vr.oracle_verdict) {
      std::string odir =
          vr.oracle_verdict->direction ? direction_name(*vr.oracle_verdict->direction) : "-";
      std::snprintf(line, sizeof line, "  %-15s %-6s %-9s %-9s %-18s %-10s %s\n", "",
                    "", "", verdict_name(*vr.oracle_verdict), odir.c_str(), "oracle",
                    vr.mismatch ? "MISMATCH" : "agrees");
      os << line;
      if (vr.mismatch && vr.oracle_verdict->counterexample) {
        const auto& ocx = *vr.oracle_verdict->counterexample;
        os << "      oracle counterexample: flip bit " << ocx.bit_position
           << " at line " << ocx.hook_line << " occurrence " << ocx.occurrence
           << " (" << direction_name(ocx.direction) << ")\n";
      }
    }
    if (vr.verdict.counterexample) {
      const auto& cx = *vr.verdict.counterexample;
      os << "      counterexample: inputs(";
      std::size_t pi = 0;
      for (const auto& v2 : r.per_variable) {
        if (!v2.is_param) continue;
        if (pi < cx.param_values.size()) {
          if (pi) os << ", ";
          os << v2.name << "=" << cx.param_values[pi];
        }
        ++pi;
      }
      os << ") flip bit " << cx.bit_position << " at line " << cx.hook_line
         << " occurrence " << cx.occurrence << " ("
         << direction_name(cx.direction) << ")\n";
    }
  }
  if (r.unknown_count > 0)
    os << "\n  " << r.unknown_count
       << " variable(s) undecided within bounds (counted as CRV)\n";
  if (r.engine == Engine::Differential)
    os << "\n  differential: " << (r.differential_mismatch ? "MISMATCH" : "agree")
       << "\n";
  return os.str();
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out.push_back(c);
  }
  out += "\"";
  return out;
}

std::string emit_csv(const AnalysisReport& r) {
  std::ostringstream os;
  os << "program,variable,type,kind,in_slice,verdict,direction,bit,occurrence,line\n";
  for (const auto& vr : r.per_variable) {
    os << csv_escape(r.program) << "," << csv_escape(vr.name) << "," << vr.type << ","
       << (vr.is_param ? "param" : "local") << "," << (vr.in_slice ? "yes" : "no")
       << "," << verdict_name(vr.verdict) << ","
       << (vr.verdict.direction ? direction_name(*vr.verdict.direction) : "");
    if (vr.verdict.counterexample) {
      const auto& cx = *vr.verdict.counterexample;
      os << "," << cx.bit_position << "," << cx.occurrence << "," << cx.hook_line;
    } else {
      os << ",,,";
    }
    os << "\n";
  }
  os << csv_escape(r.program) << ",summary:T=" << r.T << " S=" << r.S << " M=" << r.M
     << " eta=" << format_eta(r.S, r.M) << ",,,,,,,," << "\n";
  return os.str();
}

}  // namespace

std::string emit_report(const AnalysisReport& report, Format format) {
  switch (format) {
    case Format::Json: return emit_json(report);
    case Format::Table: return emit_table(report);
    case Format::Csv: return emit_csv(report);
  }
  return "";
}

int exit_code(const AnalysisReport& report) {
  if (report.engine == Engine::Differential && report.differential_mismatch) return 4;
  if (report.unknown_count > 0) return 3;
  return 0;
}

}  // namespace seuguard::report
