#include "seuguard/instrument.hpp"

#include <map>
#include <sstream>
#include <stdexcept>

#include "seuguard/pretty.hpp"

namespace seuguard::instr {

namespace {

using namespace ast;

void rename_expr(Expr& e, const std::string& suffix) {
  if (auto* v = std::get_if<VarRef>(&e.node)) {
    v->name += suffix;
  } else if (auto* u = std::get_if<Unary>(&e.node)) {
    rename_expr(*u->operand, suffix);
  } else if (auto* b = std::get_if<Binary>(&e.node)) {
    rename_expr(*b->lhs, suffix);
    rename_expr(*b->rhs, suffix);
  }
}

void rename_block(Block& block, const std::string& suffix);

void rename_stmt(Stmt& s, const std::string& suffix) {
  if (auto* a = std::get_if<Assign>(&s.node)) {
    a->name += suffix;
    rename_expr(*a->value, suffix);
  } else if (auto* i = std::get_if<If>(&s.node)) {
    rename_expr(*i->cond, suffix);
    rename_block(i->then_body, suffix);
    rename_block(i->else_body, suffix);
  } else if (auto* w = std::get_if<While>(&s.node)) {
    rename_expr(*w->cond, suffix);
    rename_block(w->body, suffix);
  } else if (auto* o = std::get_if<Output>(&s.node)) {
    rename_expr(*o->value, suffix);
  } else if (auto* r = std::get_if<Return>(&s.node)) {
    rename_expr(*r->value, suffix);
  } else {
    rename_expr(*std::get<Print>(s.node).value, suffix);
  }
}

void rename_block(Block& block, const std::string& suffix) {
  for (auto& s : block) rename_stmt(*s, suffix);
}

void strip_expr(Expr& e, const std::string& suffix) {
  auto strip = [&](std::string& name) {
    if (name.size() > suffix.size() &&
        name.compare(name.size() - suffix.size(), suffix.size(), suffix) == 0)
      name.erase(name.size() - suffix.size());
  };
  if (auto* v = std::get_if<VarRef>(&e.node)) {
    strip(v->name);
  } else if (auto* u = std::get_if<Unary>(&e.node)) {
    strip_expr(*u->operand, suffix);
  } else if (auto* b = std::get_if<Binary>(&e.node)) {
    strip_expr(*b->lhs, suffix);
    strip_expr(*b->rhs, suffix);
  }
}

void strip_block(Block& block, const std::string& suffix);

void strip_stmt(Stmt& s, const std::string& suffix) {
  auto strip = [&](std::string& name) {
    if (name.size() > suffix.size() &&
        name.compare(name.size() - suffix.size(), suffix.size(), suffix) == 0)
      name.erase(name.size() - suffix.size());
  };
  if (auto* a = std::get_if<Assign>(&s.node)) {
    strip(a->name);
    strip_expr(*a->value, suffix);
  } else if (auto* i = std::get_if<If>(&s.node)) {
    strip_expr(*i->cond, suffix);
    strip_block(i->then_body, suffix);
    strip_block(i->else_body, suffix);
  } else if (auto* w = std::get_if<While>(&s.node)) {
    strip_expr(*w->cond, suffix);
    strip_block(w->body, suffix);
  } else if (auto* o = std::get_if<Output>(&s.node)) {
    strip_expr(*o->value, suffix);
  } else if (auto* r = std::get_if<Return>(&s.node)) {
    strip_expr(*r->value, suffix);
  } else {
    strip_expr(*std::get<Print>(s.node).value, suffix);
  }
}

void strip_block(Block& block, const std::string& suffix) {
  for (auto& s : block) strip_stmt(*s, suffix);
}

// Lexical use slots of `target` in an expression, left to right.
int slots_in_expr(const Expr& e, int target, int base, int stmt_id, Span span,
                  std::vector<HookSite>& out) {
  if (const auto* v = std::get_if<VarRef>(&e.node)) {
    if (v->index == target) {
      out.push_back({stmt_id, base, span});
      return base + 1;
    }
    return base;
  }
  if (const auto* u = std::get_if<Unary>(&e.node))
    return slots_in_expr(*u->operand, target, base, stmt_id, span, out);
  if (const auto* b = std::get_if<Binary>(&e.node)) {
    int mid = slots_in_expr(*b->lhs, target, base, stmt_id, span, out);
    return slots_in_expr(*b->rhs, target, mid, stmt_id, span, out);
  }
  return base;
}

void hooks_in_block(const Block& block, int target, std::vector<HookSite>& out);

void hooks_in_stmt(const Stmt& s, int target, std::vector<HookSite>& out) {
  if (const auto* a = std::get_if<Assign>(&s.node)) {
    slots_in_expr(*a->value, target, 0, s.id, s.span, out);
  } else if (const auto* i = std::get_if<If>(&s.node)) {
    slots_in_expr(*i->cond, target, 0, s.id, s.span, out);
    hooks_in_block(i->then_body, target, out);
    hooks_in_block(i->else_body, target, out);
  } else if (const auto* w = std::get_if<While>(&s.node)) {
    slots_in_expr(*w->cond, target, 0, s.id, s.span, out);
    hooks_in_block(w->body, target, out);
  } else if (const auto* o = std::get_if<Output>(&s.node)) {
    slots_in_expr(*o->value, target, 0, s.id, s.span, out);
  } else if (const auto* r = std::get_if<Return>(&s.node)) {
    slots_in_expr(*r->value, target, 0, s.id, s.span, out);
  } else {
    slots_in_expr(*std::get<Print>(s.node).value, target, 0, s.id, s.span, out);
  }
}

void hooks_in_block(const Block& block, int target, std::vector<HookSite>& out) {
  for (const auto& s : block) hooks_in_stmt(*s, target, out);
}

}  // namespace

ast::Program rename(const ast::Program& p, const std::string& suffix) {
  ast::Program out = clone(p);
  for (auto& v : out.vars) v.name += suffix;
  for (auto& v : out.vars)
    if (v.init) rename_expr(*v.init, suffix);
  rename_block(out.body, suffix);
  return out;
}

ast::Program unrename(const ast::Program& p, const std::string& suffix) {
  ast::Program out = clone(p);
  auto strip = [&](std::string& name) {
    if (name.size() > suffix.size() &&
        name.compare(name.size() - suffix.size(), suffix.size(), suffix) == 0)
      name.erase(name.size() - suffix.size());
  };
  for (auto& v : out.vars) strip(v.name);
  for (auto& v : out.vars)
    if (v.init) strip_expr(*v.init, suffix);
  strip_block(out.body, suffix);
  return out;
}

std::vector<HookSite> insert_fault_hooks(const ast::Program& shadow, int target) {
  std::vector<HookSite> out;
  for (const auto& v : shadow.vars)
    if (v.init) slots_in_expr(*v.init, target, 0, v.decl_id, v.span, out);
  hooks_in_block(shadow.body, target, out);
  return out;
}

InstrumentedProgram self_compose(const ast::Program& p, const prop::SafetySpec& spec,
                                 int target) {
  if (target < 0 || target >= static_cast<int>(p.vars.size()))
    throw std::invalid_argument("variable under investigation is not in the program");
  InstrumentedProgram ip;
  ip.base = &p;
  ip.spec = spec;
  ip.suffix = "__s";
  ip.shadow = rename(p, ip.suffix);
  ip.target = target;
  ip.control_loop_id = control_loop_stmt(p);
  ip.shape = ip.control_loop_id >= 0 ? Shape::ControlLoop : Shape::Terminating;
  ip.hooks = insert_fault_hooks(ip.shadow, target);
  ip.shadow_phi_name = ip.phi_name + ip.suffix;
  return ip;
}

namespace {

class Emitter {
 public:
  explicit Emitter(const InstrumentedProgram& ip) : ip_(ip) {
    for (const auto& h : ip.hooks) hook_count_[h.stmt_id]++;
  }

  std::string run() {
    const Program& base = *ip_.base;
    const Program& shadow = ip_.shadow;
    const std::string target = shadow.vars[static_cast<std::size_t>(ip_.target)].name;
    os_ << "// self-composition of " << base.name << "; investigated variable: "
        << target << "\n";
    os_ << "// PHI(O): " << prop::render(ip_.spec) << "\n";
    os_ << "// shape: "
        << (ip_.shape == Shape::ControlLoop ? "control-loop" : "terminating") << "\n";
    os_ << "int " << base.name << "__sc(";
    for (std::size_t i = 0; i < base.param_count; ++i) {
      if (i) os_ << ", ";
      os_ << type_name(base.vars[i].type) << " " << base.vars[i].name;
    }
    os_ << ") {\n";
    for (std::size_t i = base.param_count; i < base.vars.size(); ++i) decl(base.vars[i]);
    os_ << "    // shadow copy; parameters replay the base inputs\n";
    for (std::size_t i = 0; i < shadow.param_count; ++i) {
      os_ << "    " << type_name(shadow.vars[i].type) << " " << shadow.vars[i].name
          << " = " << base.vars[i].name << ";\n";
    }
    for (std::size_t i = shadow.param_count; i < shadow.vars.size(); ++i) {
      hooked_decl(shadow.vars[i]);
    }
    if (ip_.shape == Shape::Terminating) {
      os_ << "    // --- base copy ---\n";
      emit_block(base.body, 1, false);
      os_ << "    // --- shadow copy ---\n";
      emit_block(shadow.body, 1, true);
      os_ << "    assert !(" << ip_.phi_name << " ^ " << ip_.shadow_phi_name << ");\n";
    } else {
      // init statements precede the control loop; the loop runs both steps
      // and asserts every cycle
      const auto& base_body = base.body;
      const auto& shadow_body = shadow.body;
      for (std::size_t i = 0; i + 1 < base_body.size(); ++i)
        emit_stmt(*base_body[i], 1, false);
      for (std::size_t i = 0; i + 1 < shadow_body.size(); ++i)
        emit_stmt(*shadow_body[i], 1, true);
      const auto& base_loop = std::get<While>(base_body.back()->node);
      const auto& shadow_loop = std::get<While>(shadow_body.back()->node);
      os_ << "    while (true) {\n";
      os_ << "        // --- base step ---\n";
      emit_block(base_loop.body, 2, false);
      os_ << "        // --- shadow step ---\n";
      emit_block(shadow_loop.body, 2, true);
      os_ << "        assert !(" << ip_.phi_name << " ^ " << ip_.shadow_phi_name
          << ");\n";
      os_ << "    }\n";
    }
    os_ << "}\n";
    return os_.str();
  }

 private:
  void decl(const VarDecl& v) {
    os_ << "    " << type_name(v.type) << " " << v.name << " = "
        << frontend::pretty_print(*v.init) << ";\n";
  }

  void hooked_decl(const VarDecl& v) {
    emit_hooks(v.decl_id, 1);
    decl(v);
  }

  void emit_hooks(int stmt_id, int indent) {
    auto it = hook_count_.find(stmt_id);
    if (it == hook_count_.end()) return;
    const std::string target = ip_.shadow.vars[static_cast<std::size_t>(ip_.target)].name;
    std::string pad(static_cast<std::size_t>(indent) * 4, ' ');
    for (int i = 0; i < it->second; ++i)
      os_ << pad << "seu_hook(&" << target << ");\n";
  }

  const char* phi(bool shadow) const {
    return shadow ? ip_.shadow_phi_name.c_str() : ip_.phi_name.c_str();
  }

  const char* buf(bool shadow) const { return shadow ? "O__s" : "O"; }

  void emit_block(const Block& block, int indent, bool shadow) {
    for (const auto& s : block) emit_stmt(*s, indent, shadow);
  }

  void emit_stmt(const Stmt& s, int indent, bool shadow) {
    std::string pad(static_cast<std::size_t>(indent) * 4, ' ');
    if (shadow) emit_hooks(s.id, indent);
    if (const auto* i = std::get_if<If>(&s.node)) {
      os_ << pad << "if (" << frontend::pretty_print(*i->cond) << ") {\n";
      emit_block(i->then_body, indent + 1, shadow);
      os_ << pad << "}";
      if (!i->else_body.empty()) {
        os_ << " else {\n";
        emit_block(i->else_body, indent + 1, shadow);
        os_ << pad << "}";
      }
      os_ << "\n";
    } else if (const auto* w = std::get_if<While>(&s.node)) {
      os_ << pad << "while (" << frontend::pretty_print(*w->cond) << ") {\n";
      emit_block(w->body, indent + 1, shadow);
      // a hooked loop condition re-arms before every re-test
      if (shadow) emit_hooks(s.id, indent + 1);
      os_ << pad << "}\n";
    } else if (const auto* o = std::get_if<Output>(&s.node)) {
      os_ << pad << buf(shadow) << ".append(" << frontend::pretty_print(*o->value)
          << "); " << phi(shadow) << " = PHI(" << buf(shadow) << ");\n";
    } else if (const auto* r = std::get_if<Return>(&s.node)) {
      os_ << pad << buf(shadow) << ".append(" << frontend::pretty_print(*r->value)
          << "); " << phi(shadow) << " = PHI(" << buf(shadow) << ");"
          << "  // from: return\n";
    } else {
      std::string text = frontend::pretty_print(s, 0);
      if (!text.empty() && text.back() == '\n') text.pop_back();
      os_ << pad << text << "\n";
    }
  }

  const InstrumentedProgram& ip_;
  std::ostringstream os_;
  std::map<int, int> hook_count_;
};

}  // namespace

std::string emit_text(const InstrumentedProgram& ip) {
  Emitter e(ip);
  return e.run();
}

}  // namespace seuguard::instr
