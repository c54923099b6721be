#pragma once

#include <string>

#include "seuguard/ast.hpp"

namespace seuguard::frontend {

// Deterministic concrete-syntax rendering; re-parsing the result yields a
// structurally identical Program.
std::string pretty_print(const ast::Program& p);
std::string pretty_print(const ast::Expr& e);
std::string pretty_print(const ast::Stmt& s, int indent = 0);

}  // namespace seuguard::frontend
