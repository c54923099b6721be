#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "seuguard/diagnostics.hpp"

namespace seuguard::ast {

enum class Type { Int32, Bool };

const char* type_name(Type t);

enum class UnOp { Neg, Not };
enum class BinOp { Add, Sub, Mul, Div, Mod, Lt, Le, Gt, Ge, Eq, Ne, And, Or };

const char* op_text(UnOp op);
const char* op_text(BinOp op);

struct Expr;
using ExprPtr = std::unique_ptr<Expr>;

struct IntLit {
  int32_t value = 0;
};
struct BoolLit {
  bool value = false;
};
struct VarRef {
  std::string name;
  int index = -1;  // into Program::vars, set by the validator
};
struct Unary {
  UnOp op;
  ExprPtr operand;
};
struct Binary {
  BinOp op;
  ExprPtr lhs;
  ExprPtr rhs;
};
struct InputCall {};

struct Expr {
  Span span;
  Type type = Type::Int32;  // set by the validator
  std::variant<IntLit, BoolLit, VarRef, Unary, Binary, InputCall> node;
};

struct Stmt;
using StmtPtr = std::unique_ptr<Stmt>;
using Block = std::vector<StmtPtr>;

struct Assign {
  std::string name;
  int index = -1;
  ExprPtr value;
};
struct If {
  ExprPtr cond;
  Block then_body;
  Block else_body;
};
struct While {
  ExprPtr cond;
  Block body;
};
struct Output {
  ExprPtr value;
};
struct Return {
  ExprPtr value;
};
struct Print {
  ExprPtr value;
};

struct Stmt {
  Span span;
  int id = -1;  // dense preorder id, set by the validator
  std::variant<Assign, If, While, Output, Return, Print> node;
};

struct VarDecl {
  std::string name;
  Type type = Type::Int32;
  ExprPtr init;  // null for parameters
  int index = -1;
  int decl_id = -1;  // statement id of the definition site
  Span span;
  bool is_param = false;
};

// Single-procedure program. Parameters are the input variables read once at
// start; locals carry mandatory initializers and are declared before any
// statement. Variable indices follow declaration order: params, then locals.
struct Program {
  std::string name;
  std::vector<VarDecl> vars;
  std::size_t param_count = 0;
  Block body;
  int stmt_count = 0;  // decl nodes + body statements; ids are 0..stmt_count-1
};

ExprPtr clone(const Expr& e);
StmtPtr clone(const Stmt& s);
Block clone(const Block& b);
Program clone(const Program& p);

// Structural equality ignoring spans, ids and inferred types.
bool equal(const Expr& a, const Expr& b);
bool equal(const Stmt& a, const Stmt& b);
bool equal(const Block& a, const Block& b);
bool equal(const Program& a, const Program& b);

// Ordered names of all program variables (params then locals). |result| = T.
std::vector<std::string> list_variables(const Program& p);

int find_variable(const Program& p, const std::string& name);  // -1 if absent

// Number of syntactic uses of variable `var` in an expression. A use is any
// VarRef occurrence; assignment targets are not uses and are counted by the
// caller's choice of expression (the RHS only).
int count_uses(const Expr& e, int var);

// All variable indices read by the expression, sorted and deduplicated.
std::vector<int> used_variables(const Expr& e);

bool contains_input(const Expr& e);

// Control-loop shape: the last top-level statement is a while with a literal
// true condition (the validator guarantees it carries an output point).
// Returns the statement id of that loop, or -1 for terminating programs.
int control_loop_stmt(const Program& p);

}  // namespace seuguard::ast
