#pragma once

#include <string>
#include <vector>

#include "seuguard/ast.hpp"
#include "seuguard/property.hpp"

namespace seuguard::instr {

enum class Shape { Terminating, ControlLoop };

// One static fault-hook site: a syntactic use of the investigated variable.
// The hook executes immediately before each evaluation of the statement's
// expression (loop conditions re-arm once per iteration), so one static site
// can fire many dynamic occurrences.
struct HookSite {
  int stmt_id = -1;   // statement/decl id, shared between base and shadow
  int use_slot = 0;   // lexical index of the use within the expression
  Span span;
};

struct InstrumentedProgram {
  const ast::Program* base = nullptr;
  ast::Program shadow;  // base with every variable renamed; ids preserved
  prop::SafetySpec spec;  // the phi both copies evaluate at output points
  Shape shape = Shape::Terminating;
  int target = -1;      // variable index, identical in base and shadow
  std::string suffix;
  std::vector<HookSite> hooks;   // ordered by (stmt preorder, slot)
  int assertion_count = 1;       // single xor assertion
  int control_loop_id = -1;      // while(true) statement for ControlLoop
  std::string phi_name = "phi";
  std::string shadow_phi_name;
};

// Substitutes every variable occurrence (declarations, reads, assignment
// targets) with its suffixed counterpart. Indices and statement ids are
// preserved, so the result is isomorphic to the input by construction.
ast::Program rename(const ast::Program& p, const std::string& suffix);

// Strips a rename suffix from every variable; inverse of rename for
// fragments produced by it.
ast::Program unrename(const ast::Program& p, const std::string& suffix);

// Static hook sites for every syntactic use of the target: condition reads,
// right-hand-side reads, output/return/print reads and local initializer
// reads. Assignment targets are not uses.
std::vector<HookSite> insert_fault_hooks(const ast::Program& shadow, int target);

// Algorithm: run the base copy and a renamed shadow copy with hooks on the
// target, sharing inputs, and assert that the two property verdicts agree.
// Throws std::invalid_argument when target is not a program variable.
InstrumentedProgram self_compose(const ast::Program& p, const prop::SafetySpec& spec,
                                 int target);

// Concrete-syntax rendering of the composite for inspection. Uses a few
// pseudo-intrinsics (seu_hook, O.append, PHI, assert) beyond the core
// grammar.
std::string emit_text(const InstrumentedProgram& ip);

}  // namespace seuguard::instr
