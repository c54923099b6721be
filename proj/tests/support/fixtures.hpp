#pragma once

#include <stdexcept>
#include <string>

#include "seuguard/parser.hpp"

namespace seuguard::testing {

// The guarded-increment benchmark, inline for unit tests (the benchmarks/
// copy carries the documentation header; the code is identical).
inline const char* kGuardedIncrement = R"(
int f(int x, int y) {
    int output = 4;
    bool alarm = false;
    int count = 0;
    while (count < 7) {
        if (x > 10) {
            if (y == 1) {
                output = 2;
            } else {
                output = 1;
            }
        } else {
            output = output + 1;
            alarm = true;
        }
        count = count + 1;
    }
    print alarm;
    return output;
}
)";

inline ast::Program parse_ok(const std::string& source) {
  auto result = frontend::parse(source);
  if (!result.ok()) {
    std::string msg = "fixture does not parse:";
    for (const auto& d : result.diagnostics) msg += "\n  " + format_diagnostic(d);
    throw std::runtime_error(msg);
  }
  return std::move(*result.program);
}

}  // namespace seuguard::testing
