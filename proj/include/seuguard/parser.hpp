#pragma once

#include <optional>
#include <string_view>

#include "seuguard/ast.hpp"
#include "seuguard/diagnostics.hpp"

namespace seuguard::frontend {

struct ParseResult {
  std::optional<ast::Program> program;  // present iff no error diagnostics
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return program.has_value(); }
};

// Lex, parse and validate a CtrlC source text. Total: any byte sequence
// yields either a validated Program or at least one error Diagnostic.
ParseResult parse(std::string_view source);

// Non-blank line count of a source text (the LoC metric).
int count_loc(std::string_view source);

}  // namespace seuguard::frontend
