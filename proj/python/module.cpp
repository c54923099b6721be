#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "seuguard/checker.hpp"
#include "seuguard/instrument.hpp"
#include "seuguard/pretty.hpp"
#include "seuguard/report.hpp"

namespace py = pybind11;
using namespace seuguard;

namespace {

report::AnalysisConfig config_from_kwargs(const std::string& source,
                                          const std::string& source_name,
                                          const std::string& property_text,
                                          const py::dict& options) {
  report::AnalysisConfig config;
  config.source = source;
  config.source_name = source_name;
  config.property = property_text;
  for (auto item : options) {
    std::string key = py::cast<std::string>(item.first);
    if (key == "var") {
      config.variable = py::cast<std::string>(item.second);
    } else if (key == "engine") {
      std::string e = py::cast<std::string>(item.second);
      config.engine = e == "oracle"         ? report::Engine::Oracle
                      : e == "differential" ? report::Engine::Differential
                                            : report::Engine::Checker;
    } else if (key == "domains") {
      for (auto d : py::cast<py::dict>(item.second)) {
        auto range = py::cast<std::pair<int32_t, int32_t>>(d.second);
        std::string name = py::cast<std::string>(d.first);
        if (name == "input") {
          config.stream_lo = range.first;
          config.stream_hi = range.second;
        } else {
          config.domains[name] = range;
        }
      }
    } else if (key == "unwind") {
      config.unwind = py::cast<int>(item.second);
    } else if (key == "step_budget") {
      config.step_budget = py::cast<long>(item.second);
    } else if (key == "fault_bits") {
      auto range = py::cast<std::pair<int, int>>(item.second);
      config.bit_lo = range.first;
      config.bit_hi = range.second;
    } else if (key == "trigger") {
      std::string t = py::cast<std::string>(item.second);
      config.trigger = t == "first-use" ? engine::Trigger::FirstUse
                                        : engine::Trigger::NondetAnywhere;
    } else if (key == "stream_bound") {
      config.stream_bound = py::cast<int>(item.second);
    } else {
      throw py::value_error("unknown option: " + key);
    }
  }
  return config;
}

std::string analyze_source_json(const std::string& source, const std::string& property_text,
                                const std::string& source_name, const py::dict& options) {
  try {
    auto config = config_from_kwargs(source, source_name, property_text, options);
    auto rep = report::analyze(config);
    return report::emit_report(rep, report::Format::Json);
  } catch (const report::AnalyzeError& e) {
    throw py::value_error(e.message);
  }
}

std::string parse_diagnostics_json(const std::string& source) {
  auto parsed = frontend::parse(source);
  std::string out = "[";
  bool first = true;
  for (const auto& d : parsed.diagnostics) {
    if (!first) out += ",";
    first = false;
    out += "\"" + format_diagnostic(d) + "\"";
  }
  out += "]";
  return out;
}

std::vector<std::string> list_variables(const std::string& source) {
  auto parsed = frontend::parse(source);
  if (!parsed.ok()) throw py::value_error("source does not parse");
  return ast::list_variables(*parsed.program);
}

std::string emit_instrumented(const std::string& source, const std::string& property_text,
                              const std::string& var) {
  auto parsed = frontend::parse(source);
  if (!parsed.ok()) throw py::value_error("source does not parse");
  auto spec = prop::parse_spec(property_text);
  if (!spec.spec) throw py::value_error("invalid property: " + spec.error);
  int target = ast::find_variable(*parsed.program, var);
  if (target < 0) throw py::value_error("unknown variable: " + var);
  auto ip = instr::self_compose(*parsed.program, *spec.spec, target);
  return instr::emit_text(ip);
}

bool eval_property(const std::string& property_text, const std::vector<int32_t>& outputs) {
  auto spec = prop::parse_spec(property_text);
  if (!spec.spec) throw py::value_error("invalid property: " + spec.error);
  prop::OutputBuffer buffer(prop::buffer_capacity(*spec.spec));
  bool all = true;
  for (int32_t v : outputs) {
    buffer.append(v);
    all = all && prop::eval_phi(*spec.spec, buffer);
  }
  if (outputs.empty()) throw py::value_error("outputs must be non-empty");
  return all;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "conditional relevance analysis of control-program variables "
            "under single-event-upset faults";
  m.def("analyze_source_json", &analyze_source_json, py::arg("source"),
        py::arg("property"), py::arg("source_name") = "program",
        py::arg("options") = py::dict(),
        "run the full pipeline and return the report as a JSON string");
  m.def("parse_diagnostics_json", &parse_diagnostics_json, py::arg("source"),
        "parse and return diagnostics as a JSON list of strings");
  m.def("list_variables", &list_variables, py::arg("source"),
        "declaration-ordered variable names of a program");
  m.def("flip_bit", &checker::flip_bit, py::arg("value"), py::arg("pos"),
        "value XOR (1 << pos) on a 32-bit signed integer");
  m.def("emit_instrumented", &emit_instrumented, py::arg("source"), py::arg("property"),
        py::arg("var"), "render the self-composed, hook-instrumented program");
  m.def("eval_property", &eval_property, py::arg("property"), py::arg("outputs"),
        "evaluate a property over an output sequence; true iff it holds at "
        "every output point");
  m.attr("__version__") = "0.1.0";
}
