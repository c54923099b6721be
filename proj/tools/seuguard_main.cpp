#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "seuguard/instrument.hpp"
#include "seuguard/pretty.hpp"
#include "seuguard/report.hpp"

namespace fs = std::filesystem;
using namespace seuguard;

namespace {

int fail_usage(const std::string& msg) {
  std::cerr << "error: " << msg << "\n";
  return 1;
}

bool parse_range(const std::string& text, int32_t& lo, int32_t& hi) {
  auto dots = text.find("..");
  if (dots == std::string::npos) return false;
  try {
    std::size_t used = 0;
    long lo_l = std::stol(text.substr(0, dots), &used);
    if (used != dots) return false;
    std::string rest = text.substr(dots + 2);
    long hi_l = std::stol(rest, &used);
    if (used != rest.size()) return false;
    if (lo_l < INT32_MIN || lo_l > INT32_MAX || hi_l < INT32_MIN || hi_l > INT32_MAX)
      return false;
    lo = static_cast<int32_t>(lo_l);
    hi = static_cast<int32_t>(hi_l);
    return true;
  } catch (...) {
    return false;
  }
}

std::optional<std::string> read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"seuguard - conditional relevance analysis for control programs "
               "under single-event-upset faults"};
  app.require_subcommand(1);

  auto* analyze = app.add_subcommand(
      "analyze", "classify program variables against a safety property");

  std::string source_path;
  std::string property_arg;
  std::string var_name;
  bool all_vars = false;
  std::string engine_name = "checker";
  bool oracle_flag = false;
  bool differential_flag = false;
  std::vector<std::string> domain_args;
  int unwind = 16;
  long step_budget = 10000;
  std::string fault_bits = "0..31";
  std::string trigger = "nondet";
  int stream_bound = 2;
  std::string format_name = "table";
  std::string emit_cfg, emit_pdg;
  bool emit_slice = false, emit_instr = false;

  analyze->add_option("file", source_path, "CtrlC source file (.ctl)")->required();
  analyze->add_option("--property", property_arg,
                      "property text or .prop file (default: <file>.prop)");
  analyze->add_option("--var", var_name, "analyze one variable");
  analyze->add_flag("--all", all_vars, "analyze every variable (default)");
  analyze->add_option("--engine", engine_name, "checker|oracle|differential")
      ->check(CLI::IsMember({"checker", "oracle", "differential"}));
  analyze->add_flag("--oracle", oracle_flag, "shorthand for --engine oracle");
  analyze->add_flag("--differential", differential_flag,
                    "shorthand for --engine differential");
  analyze->add_option("--domain", domain_args,
                      "var=lo..hi inclusive range (repeatable); 'input=lo..hi' "
                      "sets the input() stream range");
  analyze->add_option("--unwind", unwind, "loop unwind bound (default 16)");
  analyze->add_option("--step-budget", step_budget,
                      "statement budget per run (default 10000)");
  analyze->add_option("--fault-bits", fault_bits, "bit range lo..hi (default 0..31)");
  analyze->add_option("--trigger", trigger, "nondet|first-use")
      ->check(CLI::IsMember({"nondet", "first-use"}));
  analyze->add_option("--stream-bound", stream_bound,
                      "enumerated input() reads per control cycle (default 2)");
  analyze->add_option("--format", format_name, "table|json|csv")
      ->check(CLI::IsMember({"table", "json", "csv"}));
  analyze->add_option("--emit-cfg", emit_cfg, "dump the control flow graph (dot)")
      ->expected(0, 1);
  analyze->add_option("--emit-pdg", emit_pdg, "dump the dependence graph (dot)")
      ->expected(0, 1);
  analyze->add_flag("--emit-slice", emit_slice, "print the sliced source");
  analyze->add_flag("--emit-instrumented", emit_instr,
                    "print the self-composed program (requires --var)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  const bool want_cfg = analyze->count("--emit-cfg") > 0;
  const bool want_pdg = analyze->count("--emit-pdg") > 0;
  if ((want_cfg && !emit_cfg.empty() && emit_cfg != "dot") ||
      (want_pdg && !emit_pdg.empty() && emit_pdg != "dot"))
    return fail_usage("only the 'dot' emit format is supported");

  fs::path src(source_path);
  auto source = read_file(src);
  if (!source) return fail_usage("cannot read " + source_path);

  report::AnalysisConfig config;
  config.source = *source;
  config.source_name = src.stem().string();

  if (!property_arg.empty()) {
    fs::path as_path(property_arg);
    if (property_arg.size() > 5 &&
        property_arg.substr(property_arg.size() - 5) == ".prop") {
      auto text = read_file(as_path);
      if (!text) return fail_usage("cannot read property file " + property_arg);
      config.property = *text;
    } else {
      config.property = property_arg;
    }
  } else {
    fs::path sidecar = src;
    sidecar.replace_extension(".prop");
    auto text = read_file(sidecar);
    if (!text)
      return fail_usage("no --property given and no sidecar " + sidecar.string());
    config.property = *text;
  }
  // trim trailing whitespace/newlines from property files
  while (!config.property.empty() &&
         (config.property.back() == '\n' || config.property.back() == '\r' ||
          config.property.back() == ' '))
    config.property.pop_back();

  if (!var_name.empty() && all_vars)
    return fail_usage("--var and --all are mutually exclusive");
  if (!var_name.empty()) config.variable = var_name;

  // --oracle alone swaps the engine; with --differential the oracle runs
  // alongside the checker
  if (differential_flag) engine_name = "differential";
  else if (oracle_flag) engine_name = "oracle";
  config.engine = engine_name == "oracle"       ? report::Engine::Oracle
                  : engine_name == "differential" ? report::Engine::Differential
                                                  : report::Engine::Checker;

  for (const auto& d : domain_args) {
    auto eq = d.find('=');
    if (eq == std::string::npos || eq == 0)
      return fail_usage("--domain expects var=lo..hi, got '" + d + "'");
    std::string name = d.substr(0, eq);
    int32_t lo, hi;
    if (!parse_range(d.substr(eq + 1), lo, hi))
      return fail_usage("--domain expects var=lo..hi, got '" + d + "'");
    if (name == "input") {
      config.stream_lo = lo;
      config.stream_hi = hi;
    } else {
      config.domains[name] = {lo, hi};
    }
  }
  if (!parse_range(fault_bits, config.bit_lo, config.bit_hi))
    return fail_usage("--fault-bits expects lo..hi, got '" + fault_bits + "'");
  config.unwind = unwind;
  config.step_budget = step_budget;
  config.stream_bound = stream_bound;
  config.trigger = trigger == "first-use" ? engine::Trigger::FirstUse
                                          : engine::Trigger::NondetAnywhere;

  report::Format format = format_name == "json"  ? report::Format::Json
                          : format_name == "csv" ? report::Format::Csv
                                                 : report::Format::Table;

  try {
    // debugging emits run before the analysis
    if (want_cfg || want_pdg || emit_slice || emit_instr) {
      auto parsed = frontend::parse(config.source);
      if (!parsed.ok()) {
        for (const auto& diag : parsed.diagnostics)
          std::cerr << format_diagnostic(diag) << "\n";
        return 2;
      }
      auto spec = prop::parse_spec(config.property);
      if (!spec.spec) {
        std::cerr << "error: invalid property: " << spec.error << "\n";
        return 2;
      }
      cfg::Cfg graph = cfg::build_cfg(*parsed.program);
      if (want_cfg) std::cout << cfg::to_dot(graph);
      if (want_pdg || emit_slice) {
        cfg::Pdg pdg = cfg::build_pdg(graph);
        if (want_pdg) std::cout << cfg::to_dot(pdg);
        if (emit_slice) {
          int out_var = ast::find_variable(*parsed.program, spec.spec->output_variable);
          if (out_var < 0) {
            std::cerr << "error: property variable is not declared\n";
            return 2;
          }
          auto slice = slicer::slice_at_output_points(pdg, out_var);
          std::cout << slicer::render_sliced_source(*parsed.program, slice);
        }
      }
      if (emit_instr) {
        if (var_name.empty())
          return fail_usage("--emit-instrumented requires --var");
        int target = ast::find_variable(*parsed.program, var_name);
        if (target < 0) return fail_usage("--var names unknown variable " + var_name);
        auto ip = instr::self_compose(*parsed.program, *spec.spec, target);
        std::cout << instr::emit_text(ip);
      }
    }

    report::AnalysisReport rep = report::analyze(config);
    std::cout << report::emit_report(rep, format);
    int code = report::exit_code(rep);
    if (code == 4)
      std::cerr << "differential mismatch: checker and oracle disagree\n";
    return code;
  } catch (const report::AnalyzeError& e) {
    std::cerr << "error: " << e.message << "\n";
    return e.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
}
