#include "seuguard/pretty.hpp"

#include <sstream>

namespace seuguard::frontend {

namespace {

using namespace ast;

int precedence(BinOp op) {
  switch (op) {
    case BinOp::Or: return 1;
    case BinOp::And: return 2;
    case BinOp::Eq: case BinOp::Ne: return 3;
    case BinOp::Lt: case BinOp::Le: case BinOp::Gt: case BinOp::Ge: return 4;
    case BinOp::Add: case BinOp::Sub: return 5;
    case BinOp::Mul: case BinOp::Div: case BinOp::Mod: return 6;
  }
  return 0;
}

constexpr int kUnaryPrec = 7;

void print_expr(std::ostream& os, const Expr& e, int parent_prec) {
  if (const auto* i = std::get_if<IntLit>(&e.node)) {
    os << i->value;
  } else if (const auto* b = std::get_if<BoolLit>(&e.node)) {
    os << (b->value ? "true" : "false");
  } else if (const auto* v = std::get_if<VarRef>(&e.node)) {
    os << v->name;
  } else if (const auto* u = std::get_if<Unary>(&e.node)) {
    os << op_text(u->op);
    print_expr(os, *u->operand, kUnaryPrec);
  } else if (const auto* bi = std::get_if<Binary>(&e.node)) {
    int prec = precedence(bi->op);
    bool parens = prec < parent_prec;
    if (parens) os << "(";
    print_expr(os, *bi->lhs, prec);
    os << " " << op_text(bi->op) << " ";
    // Right operand needs parens at equal precedence: ops are left-associative.
    print_expr(os, *bi->rhs, prec + 1);
    if (parens) os << ")";
  } else {
    os << "input()";
  }
}

void print_block(std::ostream& os, const Block& block, int indent);

void print_stmt(std::ostream& os, const Stmt& s, int indent) {
  std::string pad(static_cast<std::size_t>(indent) * 4, ' ');
  if (const auto* a = std::get_if<Assign>(&s.node)) {
    os << pad << a->name << " = ";
    print_expr(os, *a->value, 0);
    os << ";\n";
  } else if (const auto* i = std::get_if<If>(&s.node)) {
    os << pad << "if (";
    print_expr(os, *i->cond, 0);
    os << ") {\n";
    print_block(os, i->then_body, indent + 1);
    os << pad << "}";
    if (!i->else_body.empty()) {
      os << " else {\n";
      print_block(os, i->else_body, indent + 1);
      os << pad << "}";
    }
    os << "\n";
  } else if (const auto* w = std::get_if<While>(&s.node)) {
    os << pad << "while (";
    print_expr(os, *w->cond, 0);
    os << ") {\n";
    print_block(os, w->body, indent + 1);
    os << pad << "}\n";
  } else if (const auto* o = std::get_if<Output>(&s.node)) {
    os << pad << "output ";
    print_expr(os, *o->value, 0);
    os << ";\n";
  } else if (const auto* r = std::get_if<Return>(&s.node)) {
    os << pad << "return ";
    print_expr(os, *r->value, 0);
    os << ";\n";
  } else {
    os << pad << "print ";
    print_expr(os, *std::get<Print>(s.node).value, 0);
    os << ";\n";
  }
}

void print_block(std::ostream& os, const Block& block, int indent) {
  for (const auto& s : block) print_stmt(os, *s, indent);
}

}  // namespace

std::string pretty_print(const ast::Expr& e) {
  std::ostringstream os;
  print_expr(os, e, 0);
  return os.str();
}

std::string pretty_print(const ast::Stmt& s, int indent) {
  std::ostringstream os;
  print_stmt(os, s, indent);
  return os.str();
}

std::string pretty_print(const ast::Program& p) {
  std::ostringstream os;
  os << "int " << p.name << "(";
  for (std::size_t i = 0; i < p.param_count; ++i) {
    if (i) os << ", ";
    os << type_name(p.vars[i].type) << " " << p.vars[i].name;
  }
  os << ") {\n";
  for (std::size_t i = p.param_count; i < p.vars.size(); ++i) {
    const auto& v = p.vars[i];
    os << "    " << type_name(v.type) << " " << v.name << " = ";
    print_expr(os, *v.init, 0);
    os << ";\n";
  }
  print_block(os, p.body, 1);
  os << "}\n";
  return os.str();
}

}  // namespace seuguard::frontend
