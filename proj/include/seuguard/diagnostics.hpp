#pragma once

#include <string>
#include <vector>

namespace seuguard {

struct Span {
  int line = 0;  // 1-based; 0 means "no location"
  int col = 0;
};

enum class Severity { Error, Warning };

struct Diagnostic {
  Severity severity = Severity::Error;
  std::string message;
  Span span;
};

inline bool has_errors(const std::vector<Diagnostic>& diags) {
  for (const auto& d : diags)
    if (d.severity == Severity::Error) return true;
  return false;
}

std::string format_diagnostic(const Diagnostic& d);

}  // namespace seuguard
