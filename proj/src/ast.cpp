#include "seuguard/ast.hpp"

#include <algorithm>

namespace seuguard::ast {

const char* type_name(Type t) { return t == Type::Int32 ? "int" : "bool"; }

const char* op_text(UnOp op) { return op == UnOp::Neg ? "-" : "!"; }

const char* op_text(BinOp op) {
  switch (op) {
    case BinOp::Add: return "+";
    case BinOp::Sub: return "-";
    case BinOp::Mul: return "*";
    case BinOp::Div: return "/";
    case BinOp::Mod: return "%";
    case BinOp::Lt: return "<";
    case BinOp::Le: return "<=";
    case BinOp::Gt: return ">";
    case BinOp::Ge: return ">=";
    case BinOp::Eq: return "==";
    case BinOp::Ne: return "!=";
    case BinOp::And: return "&&";
    case BinOp::Or: return "||";
  }
  return "?";
}

ExprPtr clone(const Expr& e) {
  auto out = std::make_unique<Expr>();
  out->span = e.span;
  out->type = e.type;
  if (const auto* i = std::get_if<IntLit>(&e.node)) {
    out->node = *i;
  } else if (const auto* b = std::get_if<BoolLit>(&e.node)) {
    out->node = *b;
  } else if (const auto* v = std::get_if<VarRef>(&e.node)) {
    out->node = *v;
  } else if (const auto* u = std::get_if<Unary>(&e.node)) {
    out->node = Unary{u->op, clone(*u->operand)};
  } else if (const auto* bi = std::get_if<Binary>(&e.node)) {
    out->node = Binary{bi->op, clone(*bi->lhs), clone(*bi->rhs)};
  } else {
    out->node = InputCall{};
  }
  return out;
}

StmtPtr clone(const Stmt& s) {
  auto out = std::make_unique<Stmt>();
  out->span = s.span;
  out->id = s.id;
  if (const auto* a = std::get_if<Assign>(&s.node)) {
    out->node = Assign{a->name, a->index, clone(*a->value)};
  } else if (const auto* i = std::get_if<If>(&s.node)) {
    out->node = If{clone(*i->cond), clone(i->then_body), clone(i->else_body)};
  } else if (const auto* w = std::get_if<While>(&s.node)) {
    out->node = While{clone(*w->cond), clone(w->body)};
  } else if (const auto* o = std::get_if<Output>(&s.node)) {
    out->node = Output{clone(*o->value)};
  } else if (const auto* r = std::get_if<Return>(&s.node)) {
    out->node = Return{clone(*r->value)};
  } else {
    out->node = Print{clone(*std::get<Print>(s.node).value)};
  }
  return out;
}

Block clone(const Block& b) {
  Block out;
  out.reserve(b.size());
  for (const auto& s : b) out.push_back(clone(*s));
  return out;
}

Program clone(const Program& p) {
  Program out;
  out.name = p.name;
  out.param_count = p.param_count;
  out.stmt_count = p.stmt_count;
  out.vars.reserve(p.vars.size());
  for (const auto& v : p.vars) {
    VarDecl d;
    d.name = v.name;
    d.type = v.type;
    d.init = v.init ? clone(*v.init) : nullptr;
    d.index = v.index;
    d.decl_id = v.decl_id;
    d.span = v.span;
    d.is_param = v.is_param;
    out.vars.push_back(std::move(d));
  }
  out.body = clone(p.body);
  return out;
}

bool equal(const Expr& a, const Expr& b) {
  if (a.node.index() != b.node.index()) return false;
  if (const auto* i = std::get_if<IntLit>(&a.node))
    return i->value == std::get<IntLit>(b.node).value;
  if (const auto* bo = std::get_if<BoolLit>(&a.node))
    return bo->value == std::get<BoolLit>(b.node).value;
  if (const auto* v = std::get_if<VarRef>(&a.node))
    return v->name == std::get<VarRef>(b.node).name;
  if (const auto* u = std::get_if<Unary>(&a.node)) {
    const auto& ub = std::get<Unary>(b.node);
    return u->op == ub.op && equal(*u->operand, *ub.operand);
  }
  if (const auto* bi = std::get_if<Binary>(&a.node)) {
    const auto& bb = std::get<Binary>(b.node);
    return bi->op == bb.op && equal(*bi->lhs, *bb.lhs) && equal(*bi->rhs, *bb.rhs);
  }
  return true;  // InputCall
}

bool equal(const Stmt& a, const Stmt& b) {
  if (a.node.index() != b.node.index()) return false;
  if (const auto* as = std::get_if<Assign>(&a.node)) {
    const auto& bs = std::get<Assign>(b.node);
    return as->name == bs.name && equal(*as->value, *bs.value);
  }
  if (const auto* ai = std::get_if<If>(&a.node)) {
    const auto& bi = std::get<If>(b.node);
    return equal(*ai->cond, *bi.cond) && equal(ai->then_body, bi.then_body) &&
           equal(ai->else_body, bi.else_body);
  }
  if (const auto* aw = std::get_if<While>(&a.node)) {
    const auto& bw = std::get<While>(b.node);
    return equal(*aw->cond, *bw.cond) && equal(aw->body, bw.body);
  }
  if (const auto* ao = std::get_if<Output>(&a.node))
    return equal(*ao->value, *std::get<Output>(b.node).value);
  if (const auto* ar = std::get_if<Return>(&a.node))
    return equal(*ar->value, *std::get<Return>(b.node).value);
  return equal(*std::get<Print>(a.node).value, *std::get<Print>(b.node).value);
}

bool equal(const Block& a, const Block& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!equal(*a[i], *b[i])) return false;
  return true;
}

bool equal(const Program& a, const Program& b) {
  if (a.name != b.name || a.param_count != b.param_count ||
      a.vars.size() != b.vars.size())
    return false;
  for (std::size_t i = 0; i < a.vars.size(); ++i) {
    const auto& va = a.vars[i];
    const auto& vb = b.vars[i];
    if (va.name != vb.name || va.type != vb.type || va.is_param != vb.is_param)
      return false;
    if ((va.init == nullptr) != (vb.init == nullptr)) return false;
    if (va.init && !equal(*va.init, *vb.init)) return false;
  }
  return equal(a.body, b.body);
}

std::vector<std::string> list_variables(const Program& p) {
  std::vector<std::string> out;
  out.reserve(p.vars.size());
  for (const auto& v : p.vars) out.push_back(v.name);
  return out;
}

int find_variable(const Program& p, const std::string& name) {
  for (const auto& v : p.vars)
    if (v.name == name) return v.index;
  return -1;
}

int count_uses(const Expr& e, int var) {
  if (const auto* v = std::get_if<VarRef>(&e.node)) return v->index == var ? 1 : 0;
  if (const auto* u = std::get_if<Unary>(&e.node)) return count_uses(*u->operand, var);
  if (const auto* b = std::get_if<Binary>(&e.node))
    return count_uses(*b->lhs, var) + count_uses(*b->rhs, var);
  return 0;
}

namespace {
void collect_uses(const Expr& e, std::vector<int>& out) {
  if (const auto* v = std::get_if<VarRef>(&e.node)) {
    out.push_back(v->index);
  } else if (const auto* u = std::get_if<Unary>(&e.node)) {
    collect_uses(*u->operand, out);
  } else if (const auto* b = std::get_if<Binary>(&e.node)) {
    collect_uses(*b->lhs, out);
    collect_uses(*b->rhs, out);
  }
}
}  // namespace

std::vector<int> used_variables(const Expr& e) {
  std::vector<int> out;
  collect_uses(e, out);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool contains_input(const Expr& e) {
  if (std::get_if<InputCall>(&e.node)) return true;
  if (const auto* u = std::get_if<Unary>(&e.node)) return contains_input(*u->operand);
  if (const auto* b = std::get_if<Binary>(&e.node))
    return contains_input(*b->lhs) || contains_input(*b->rhs);
  return false;
}

int control_loop_stmt(const Program& p) {
  if (p.body.empty()) return -1;
  const Stmt& last = *p.body.back();
  const auto* w = std::get_if<While>(&last.node);
  if (!w) return -1;
  const auto* b = std::get_if<BoolLit>(&w->cond->node);
  return (b && b->value) ? last.id : -1;
}

}  // namespace seuguard::ast
