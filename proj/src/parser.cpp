#include "seuguard/parser.hpp"

#include <cctype>
#include <cstdlib>
#include <map>
#include <set>
#include <sstream>

namespace seuguard::frontend {

namespace {

using namespace ast;

enum class Tok {
  Ident, IntLit, KwInt, KwBool, KwIf, KwElse, KwWhile, KwOutput, KwReturn,
  KwPrint, KwInput, KwTrue, KwFalse,
  LParen, RParen, LBrace, RBrace, Comma, Semi,
  Plus, Minus, Star, Slash, Percent,
  Lt, Le, Gt, Ge, EqEq, Ne, AndAnd, OrOr, Not, Assign,
  End, Error,
};

struct Token {
  Tok kind = Tok::End;
  std::string text;
  int64_t int_value = 0;
  Span span;
};

const std::map<std::string, Tok, std::less<>> kKeywords = {
    {"int", Tok::KwInt},       {"bool", Tok::KwBool},   {"if", Tok::KwIf},
    {"else", Tok::KwElse},     {"while", Tok::KwWhile}, {"output", Tok::KwOutput},
    {"return", Tok::KwReturn}, {"print", Tok::KwPrint}, {"input", Tok::KwInput},
    {"true", Tok::KwTrue},     {"false", Tok::KwFalse},
};

class Lexer {
 public:
  Lexer(std::string_view src, std::vector<Diagnostic>& diags)
      : src_(src), diags_(diags) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      Token t = next();
      out.push_back(t);
      if (t.kind == Tok::End || t.kind == Tok::Error) break;
    }
    return out;
  }

 private:
  Span here() const { return Span{line_, col_}; }

  char peek(int off = 0) const {
    std::size_t i = pos_ + static_cast<std::size_t>(off);
    return i < src_.size() ? src_[i] : '\0';
  }

  char advance() {
    char c = src_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }

  bool skip_space_and_comments() {
    while (pos_ < src_.size()) {
      char c = peek();
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance();
      } else if (c == '/' && peek(1) == '/') {
        while (pos_ < src_.size() && peek() != '\n') advance();
      } else if (c == '/' && peek(1) == '*') {
        Span start = here();
        advance();
        advance();
        bool closed = false;
        while (pos_ < src_.size()) {
          if (peek() == '*' && peek(1) == '/') {
            advance();
            advance();
            closed = true;
            break;
          }
          advance();
        }
        if (!closed) {
          diags_.push_back({Severity::Error, "unterminated block comment", start});
          return false;
        }
      } else {
        break;
      }
    }
    return true;
  }

  Token next() {
    if (!skip_space_and_comments()) return Token{Tok::Error, "", 0, here()};
    if (pos_ >= src_.size()) return Token{Tok::End, "", 0, here()};
    Span span = here();
    char c = advance();
    auto tok = [&](Tok k, std::string text) { return Token{k, std::move(text), 0, span}; };
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string word(1, c);
      while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')
        word.push_back(advance());
      if (auto it = kKeywords.find(word); it != kKeywords.end())
        return tok(it->second, word);
      if (word.find("__") != std::string::npos) {
        diags_.push_back({Severity::Error,
                          "identifier '" + word + "' contains a reserved double underscore",
                          span});
        return Token{Tok::Error, word, 0, span};
      }
      return tok(Tok::Ident, word);
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      int64_t value = c - '0';
      bool overflow = false;
      while (std::isdigit(static_cast<unsigned char>(peek()))) {
        value = value * 10 + (advance() - '0');
        if (value > 4294967296LL) overflow = true;  // cap to keep value bounded
      }
      if (overflow || value > 2147483647LL) {
        diags_.push_back({Severity::Error, "integer literal out of 32-bit range", span});
        return Token{Tok::Error, "", value, span};
      }
      Token t = tok(Tok::IntLit, "");
      t.int_value = value;
      return t;
    }
    switch (c) {
      case '(': return tok(Tok::LParen, "(");
      case ')': return tok(Tok::RParen, ")");
      case '{': return tok(Tok::LBrace, "{");
      case '}': return tok(Tok::RBrace, "}");
      case ',': return tok(Tok::Comma, ",");
      case ';': return tok(Tok::Semi, ";");
      case '+': return tok(Tok::Plus, "+");
      case '-': return tok(Tok::Minus, "-");
      case '*': return tok(Tok::Star, "*");
      case '/': return tok(Tok::Slash, "/");
      case '%': return tok(Tok::Percent, "%");
      case '<':
        if (peek() == '=') { advance(); return tok(Tok::Le, "<="); }
        return tok(Tok::Lt, "<");
      case '>':
        if (peek() == '=') { advance(); return tok(Tok::Ge, ">="); }
        return tok(Tok::Gt, ">");
      case '=':
        if (peek() == '=') { advance(); return tok(Tok::EqEq, "=="); }
        return tok(Tok::Assign, "=");
      case '!':
        if (peek() == '=') { advance(); return tok(Tok::Ne, "!="); }
        return tok(Tok::Not, "!");
      case '&':
        if (peek() == '&') { advance(); return tok(Tok::AndAnd, "&&"); }
        break;
      case '|':
        if (peek() == '|') { advance(); return tok(Tok::OrOr, "||"); }
        break;
      default: break;
    }
    diags_.push_back({Severity::Error,
                      std::string("unexpected character '") + c + "'", span});
    return Token{Tok::Error, std::string(1, c), 0, span};
  }

  std::string_view src_;
  std::vector<Diagnostic>& diags_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

// Recursive-descent parser. Bails out on the first syntax error; the
// validator afterwards reports semantic issues in bulk.
class Parser {
 public:
  Parser(std::vector<Token> tokens, std::vector<Diagnostic>& diags)
      : toks_(std::move(tokens)), diags_(diags) {}

  std::optional<Program> run() {
    auto prog = parse_program();
    if (!prog) return std::nullopt;
    if (!at(Tok::End)) {
      error("unexpected trailing input after the procedure body");
      return std::nullopt;
    }
    return prog;
  }

 private:
  const Token& cur() const { return toks_[idx_]; }
  const Token& peek() const { return toks_[idx_ + 1 < toks_.size() ? idx_ + 1 : idx_]; }
  bool at(Tok k) const { return cur().kind == k; }

  // `output` doubles as an ordinary identifier (it names the controlled
  // value in typical programs); it reads as a statement keyword only where
  // an output statement can start.
  bool at_name() const { return at(Tok::Ident) || at(Tok::KwOutput); }

  std::string take_name() {
    const Token& t = take();
    return t.kind == Tok::KwOutput ? "output" : t.text;
  }

  const Token& take() { return toks_[idx_ < toks_.size() - 1 ? idx_++ : idx_]; }

  bool expect(Tok k, const char* what) {
    if (at(k)) {
      take();
      return true;
    }
    error(std::string("expected ") + what);
    return false;
  }

  void error(const std::string& msg) {
    if (!failed_) diags_.push_back({Severity::Error, msg, cur().span});
    failed_ = true;
  }

  std::optional<Type> parse_type() {
    if (at(Tok::KwInt)) { take(); return Type::Int32; }
    if (at(Tok::KwBool)) { take(); return Type::Bool; }
    return std::nullopt;
  }

  std::optional<Program> parse_program() {
    Program prog;
    if (!expect(Tok::KwInt, "'int' return type")) return std::nullopt;
    if (!at(Tok::Ident)) {
      error("expected procedure name");
      return std::nullopt;
    }
    prog.name = take().text;
    if (!expect(Tok::LParen, "'('")) return std::nullopt;
    if (!at(Tok::RParen)) {
      while (true) {
        auto ty = parse_type();
        if (!ty) {
          error("expected parameter type");
          return std::nullopt;
        }
        if (!at_name()) {
          error("expected parameter name");
          return std::nullopt;
        }
        VarDecl d;
        d.type = *ty;
        d.span = cur().span;
        d.name = take_name();
        d.is_param = true;
        prog.vars.push_back(std::move(d));
        if (at(Tok::Comma)) { take(); continue; }
        break;
      }
    }
    prog.param_count = prog.vars.size();
    if (!expect(Tok::RParen, "')'")) return std::nullopt;
    if (!expect(Tok::LBrace, "'{'")) return std::nullopt;
    // Local declarations come first, C89 style.
    while (at(Tok::KwInt) || at(Tok::KwBool)) {
      auto ty = parse_type();
      if (!at_name()) {
        error("expected local variable name");
        return std::nullopt;
      }
      VarDecl d;
      d.type = *ty;
      d.span = cur().span;
      d.name = take_name();
      if (!expect(Tok::Assign, "'=' (locals require an initializer)")) return std::nullopt;
      d.init = parse_expr();
      if (!d.init) return std::nullopt;
      if (!expect(Tok::Semi, "';'")) return std::nullopt;
      prog.vars.push_back(std::move(d));
    }
    while (!at(Tok::RBrace) && !at(Tok::End) && !failed_) {
      auto s = parse_stmt();
      if (!s) return std::nullopt;
      prog.body.push_back(std::move(s));
    }
    if (!expect(Tok::RBrace, "'}'")) return std::nullopt;
    return prog;
  }

  StmtPtr parse_stmt() {
    Span span = cur().span;
    auto make = [&](auto node) {
      auto s = std::make_unique<Stmt>();
      s->span = span;
      s->node = std::move(node);
      return s;
    };
    if (at(Tok::KwInt) || at(Tok::KwBool)) {
      error("local declarations must precede all statements");
      return nullptr;
    }
    if (at(Tok::KwIf)) {
      take();
      if (!expect(Tok::LParen, "'('")) return nullptr;
      auto cond = parse_expr();
      if (!cond) return nullptr;
      if (!expect(Tok::RParen, "')'")) return nullptr;
      If node;
      node.cond = std::move(cond);
      if (!parse_block(node.then_body)) return nullptr;
      if (at(Tok::KwElse)) {
        take();
        if (at(Tok::KwIf)) {
          auto nested = parse_stmt();
          if (!nested) return nullptr;
          node.else_body.push_back(std::move(nested));
        } else if (!parse_block(node.else_body)) {
          return nullptr;
        }
      }
      return make(std::move(node));
    }
    if (at(Tok::KwWhile)) {
      take();
      if (!expect(Tok::LParen, "'('")) return nullptr;
      auto cond = parse_expr();
      if (!cond) return nullptr;
      if (!expect(Tok::RParen, "')'")) return nullptr;
      While node;
      node.cond = std::move(cond);
      if (!parse_block(node.body)) return nullptr;
      return make(std::move(node));
    }
    if (at(Tok::KwOutput)) {
      if (peek().kind == Tok::Assign) {
        // assignment to a variable named `output`
        Assign node;
        node.name = take_name();
        take();  // '='
        node.value = parse_expr();
        if (!node.value || !expect(Tok::Semi, "';'")) return nullptr;
        return make(std::move(node));
      }
      take();
      auto e = parse_expr();
      if (!e || !expect(Tok::Semi, "';'")) return nullptr;
      return make(Output{std::move(e)});
    }
    if (at(Tok::KwReturn)) {
      take();
      auto e = parse_expr();
      if (!e || !expect(Tok::Semi, "';'")) return nullptr;
      return make(Return{std::move(e)});
    }
    if (at(Tok::KwPrint)) {
      take();
      auto e = parse_expr();
      if (!e || !expect(Tok::Semi, "';'")) return nullptr;
      return make(Print{std::move(e)});
    }
    if (at(Tok::Ident)) {
      Assign node;
      node.name = take().text;
      if (!expect(Tok::Assign, "'='")) return nullptr;
      node.value = parse_expr();
      if (!node.value || !expect(Tok::Semi, "';'")) return nullptr;
      return make(std::move(node));
    }
    error("expected a statement");
    return nullptr;
  }

  bool parse_block(Block& out) {
    if (!expect(Tok::LBrace, "'{'")) return false;
    while (!at(Tok::RBrace) && !at(Tok::End) && !failed_) {
      auto s = parse_stmt();
      if (!s) return false;
      out.push_back(std::move(s));
    }
    return expect(Tok::RBrace, "'}'");
  }

  ExprPtr parse_expr() { return parse_or(); }

  ExprPtr mk_binary(BinOp op, ExprPtr lhs, ExprPtr rhs, Span span) {
    auto e = std::make_unique<Expr>();
    e->span = span;
    e->node = Binary{op, std::move(lhs), std::move(rhs)};
    return e;
  }

  ExprPtr parse_or() {
    auto lhs = parse_and();
    if (!lhs) return nullptr;
    while (at(Tok::OrOr)) {
      Span span = take().span;
      auto rhs = parse_and();
      if (!rhs) return nullptr;
      lhs = mk_binary(BinOp::Or, std::move(lhs), std::move(rhs), span);
    }
    return lhs;
  }

  ExprPtr parse_and() {
    auto lhs = parse_equality();
    if (!lhs) return nullptr;
    while (at(Tok::AndAnd)) {
      Span span = take().span;
      auto rhs = parse_equality();
      if (!rhs) return nullptr;
      lhs = mk_binary(BinOp::And, std::move(lhs), std::move(rhs), span);
    }
    return lhs;
  }

  ExprPtr parse_equality() {
    auto lhs = parse_relational();
    if (!lhs) return nullptr;
    while (at(Tok::EqEq) || at(Tok::Ne)) {
      BinOp op = at(Tok::EqEq) ? BinOp::Eq : BinOp::Ne;
      Span span = take().span;
      auto rhs = parse_relational();
      if (!rhs) return nullptr;
      lhs = mk_binary(op, std::move(lhs), std::move(rhs), span);
    }
    return lhs;
  }

  ExprPtr parse_relational() {
    auto lhs = parse_additive();
    if (!lhs) return nullptr;
    while (at(Tok::Lt) || at(Tok::Le) || at(Tok::Gt) || at(Tok::Ge)) {
      BinOp op = at(Tok::Lt)   ? BinOp::Lt
                 : at(Tok::Le) ? BinOp::Le
                 : at(Tok::Gt) ? BinOp::Gt
                               : BinOp::Ge;
      Span span = take().span;
      auto rhs = parse_additive();
      if (!rhs) return nullptr;
      lhs = mk_binary(op, std::move(lhs), std::move(rhs), span);
    }
    return lhs;
  }

  ExprPtr parse_additive() {
    auto lhs = parse_multiplicative();
    if (!lhs) return nullptr;
    while (at(Tok::Plus) || at(Tok::Minus)) {
      BinOp op = at(Tok::Plus) ? BinOp::Add : BinOp::Sub;
      Span span = take().span;
      auto rhs = parse_multiplicative();
      if (!rhs) return nullptr;
      lhs = mk_binary(op, std::move(lhs), std::move(rhs), span);
    }
    return lhs;
  }

  ExprPtr parse_multiplicative() {
    auto lhs = parse_unary();
    if (!lhs) return nullptr;
    while (at(Tok::Star) || at(Tok::Slash) || at(Tok::Percent)) {
      BinOp op = at(Tok::Star)    ? BinOp::Mul
                 : at(Tok::Slash) ? BinOp::Div
                                  : BinOp::Mod;
      Span span = take().span;
      auto rhs = parse_unary();
      if (!rhs) return nullptr;
      lhs = mk_binary(op, std::move(lhs), std::move(rhs), span);
    }
    return lhs;
  }

  ExprPtr parse_unary() {
    if (at(Tok::Minus) || at(Tok::Not)) {
      UnOp op = at(Tok::Minus) ? UnOp::Neg : UnOp::Not;
      Span span = take().span;
      auto operand = parse_unary();
      if (!operand) return nullptr;
      auto e = std::make_unique<Expr>();
      e->span = span;
      e->node = Unary{op, std::move(operand)};
      return e;
    }
    return parse_primary();
  }

  ExprPtr parse_primary() {
    Span span = cur().span;
    auto mk = [&](auto node) {
      auto e = std::make_unique<Expr>();
      e->span = span;
      e->node = std::move(node);
      return e;
    };
    if (at(Tok::IntLit)) {
      int64_t v = take().int_value;
      return mk(IntLit{static_cast<int32_t>(v)});
    }
    if (at(Tok::KwTrue)) { take(); return mk(BoolLit{true}); }
    if (at(Tok::KwFalse)) { take(); return mk(BoolLit{false}); }
    if (at(Tok::KwInput)) {
      take();
      if (!expect(Tok::LParen, "'(' after input")) return nullptr;
      if (!expect(Tok::RParen, "')'")) return nullptr;
      return mk(InputCall{});
    }
    if (at_name()) return mk(VarRef{take_name(), -1});
    if (at(Tok::LParen)) {
      take();
      auto e = parse_expr();
      if (!e) return nullptr;
      if (!expect(Tok::RParen, "')'")) return nullptr;
      return e;
    }
    error("expected an expression");
    return nullptr;
  }

  std::vector<Token> toks_;
  std::vector<Diagnostic>& diags_;
  std::size_t idx_ = 0;
  bool failed_ = false;
};

// --- Validation ------------------------------------------------------------

class Validator {
 public:
  Validator(Program& prog, std::vector<Diagnostic>& diags)
      : prog_(prog), diags_(diags) {}

  void run() {
    declare_variables();
    int next_id = 0;
    for (auto& v : prog_.vars) v.decl_id = next_id++;
    for (std::size_t i = 0; i < prog_.vars.size(); ++i) {
      auto& v = prog_.vars[i];
      if (v.init) {
        declared_limit_ = static_cast<int>(i);
        Type t = check_expr(*v.init);
        if (t != v.type)
          error(v.span, "initializer type does not match declaration of '" + v.name + "'");
      }
    }
    declared_limit_ = static_cast<int>(prog_.vars.size());
    check_block(prog_.body, next_id, /*after_terminator=*/false);
    prog_.stmt_count = next_id;
    check_output_coverage();
  }

 private:
  void error(Span span, const std::string& msg) {
    diags_.push_back({Severity::Error, msg, span});
  }

  void declare_variables() {
    std::map<std::string, Span> seen;
    int index = 0;
    for (auto& v : prog_.vars) {
      if (auto it = seen.find(v.name); it != seen.end())
        error(v.span, "duplicate declaration of '" + v.name + "'");
      seen.emplace(v.name, v.span);
      v.index = index++;
    }
  }

  int resolve(const std::string& name, Span span) {
    for (int i = 0; i < static_cast<int>(prog_.vars.size()); ++i)
      if (prog_.vars[i].name == name) {
        if (i >= declared_limit_) {
          error(span, "use before declaration: '" + name + "'");
          return -1;
        }
        return i;
      }
    error(span, "use before declaration: '" + name + "'");
    return -1;
  }

  Type check_expr(Expr& e) {
    Type t = Type::Int32;
    if (std::get_if<IntLit>(&e.node)) {
      t = Type::Int32;
    } else if (std::get_if<BoolLit>(&e.node)) {
      t = Type::Bool;
    } else if (auto* v = std::get_if<VarRef>(&e.node)) {
      v->index = resolve(v->name, e.span);
      t = v->index >= 0 ? prog_.vars[v->index].type : Type::Int32;
    } else if (auto* u = std::get_if<Unary>(&e.node)) {
      Type ot = check_expr(*u->operand);
      if (u->op == UnOp::Neg) {
        if (ot != Type::Int32) error(e.span, "unary '-' requires an int operand");
        t = Type::Int32;
      } else {
        if (ot != Type::Bool) error(e.span, "'!' requires a bool operand");
        t = Type::Bool;
      }
    } else if (auto* b = std::get_if<Binary>(&e.node)) {
      Type lt = check_expr(*b->lhs);
      Type rt = check_expr(*b->rhs);
      switch (b->op) {
        case BinOp::Add: case BinOp::Sub: case BinOp::Mul:
        case BinOp::Div: case BinOp::Mod:
          if (lt != Type::Int32 || rt != Type::Int32)
            error(e.span, std::string("'") + op_text(b->op) + "' requires int operands");
          t = Type::Int32;
          break;
        case BinOp::Lt: case BinOp::Le: case BinOp::Gt: case BinOp::Ge:
          if (lt != Type::Int32 || rt != Type::Int32)
            error(e.span, std::string("'") + op_text(b->op) + "' requires int operands");
          t = Type::Bool;
          break;
        case BinOp::Eq: case BinOp::Ne:
          if (lt != rt)
            error(e.span, std::string("'") + op_text(b->op) + "' requires operands of one type");
          t = Type::Bool;
          break;
        case BinOp::And: case BinOp::Or:
          if (lt != Type::Bool || rt != Type::Bool)
            error(e.span, std::string("'") + op_text(b->op) + "' requires bool operands");
          t = Type::Bool;
          break;
      }
    } else {
      t = Type::Int32;  // input()
    }
    e.type = t;
    return t;
  }

  static bool is_literal_true(const Expr& e) {
    const auto* b = std::get_if<BoolLit>(&e.node);
    return b && b->value;
  }

  void check_block(Block& block, int& next_id, bool after_terminator) {
    bool terminated = after_terminator;
    for (auto& sp : block) {
      Stmt& s = *sp;
      if (terminated) {
        error(s.span, "unreachable statement");
        terminated = false;  // report once per block
      }
      s.id = next_id++;
      if (auto* a = std::get_if<Assign>(&s.node)) {
        a->index = resolve(a->name, s.span);
        Type vt = check_expr(*a->value);
        if (a->index >= 0 && prog_.vars[a->index].type != vt)
          error(s.span, "assignment type does not match declaration of '" + a->name + "'");
      } else if (auto* i = std::get_if<If>(&s.node)) {
        if (check_expr(*i->cond) != Type::Bool)
          error(s.span, "if condition must be bool");
        check_block(i->then_body, next_id, false);
        check_block(i->else_body, next_id, false);
      } else if (auto* w = std::get_if<While>(&s.node)) {
        if (check_expr(*w->cond) != Type::Bool)
          error(s.span, "while condition must be bool");
        check_block(w->body, next_id, false);
        if (is_literal_true(*w->cond)) terminated = true;  // nothing runs after while(true)
      } else if (auto* o = std::get_if<Output>(&s.node)) {
        if (check_expr(*o->value) != Type::Int32)
          error(s.span, "output value must be int");
      } else if (auto* r = std::get_if<Return>(&s.node)) {
        if (check_expr(*r->value) != Type::Int32)
          error(s.span, "return value must be int");
        terminated = true;
      } else if (auto* p = std::get_if<Print>(&s.node)) {
        check_expr(*p->value);
      }
    }
  }

  // Every terminating path must pass an output construct (a return or at
  // least one `output`). Statically: all paths covered, loops may run zero
  // times, while(true) paths never terminate.
  bool covers(const Block& block, std::size_t from) {
    for (std::size_t i = from; i < block.size(); ++i) {
      const Stmt& s = *block[i];
      if (std::get_if<Output>(&s.node) || std::get_if<Return>(&s.node)) return true;
      if (const auto* c = std::get_if<If>(&s.node)) {
        bool branches = covers(c->then_body, 0) && covers(c->else_body, 0);
        if (branches) return true;
        return covers(block, i + 1);
      }
      if (const auto* w = std::get_if<While>(&s.node)) {
        if (is_literal_true(*w->cond)) return true;  // no terminating path continues
        continue;  // zero-iteration path skips the body
      }
    }
    return false;
  }

  bool block_has_output(const Block& block) const {
    for (const auto& sp : block) {
      const Stmt& s = *sp;
      if (std::get_if<Output>(&s.node) || std::get_if<Return>(&s.node)) return true;
      if (const auto* c = std::get_if<If>(&s.node)) {
        if (block_has_output(c->then_body) || block_has_output(c->else_body)) return true;
      } else if (const auto* w = std::get_if<While>(&s.node)) {
        if (block_has_output(w->body)) return true;
      }
    }
    return false;
  }

  void check_output_coverage() {
    if (!block_has_output(prog_.body)) {
      error(Span{}, "missing output construct: no 'output' or 'return' statement");
      return;
    }
    if (!covers(prog_.body, 0))
      error(Span{}, "some terminating path reaches the end of the procedure "
                    "without an 'output' or 'return'");
    // A while(true) loop must contain an output point; otherwise the loop
    // produces no observable values at all.
    check_infinite_loops(prog_.body);
  }

  void check_infinite_loops(const Block& block) {
    for (const auto& sp : block) {
      const Stmt& s = *sp;
      if (const auto* w = std::get_if<While>(&s.node)) {
        if (is_literal_true(*w->cond) && !block_has_output(w->body))
          error(s.span, "while(true) loop has no 'output' or 'return' inside");
        check_infinite_loops(w->body);
      } else if (const auto* c = std::get_if<If>(&s.node)) {
        check_infinite_loops(c->then_body);
        check_infinite_loops(c->else_body);
      }
    }
  }

  Program& prog_;
  std::vector<Diagnostic>& diags_;
  int declared_limit_ = 0;
};

}  // namespace

ParseResult parse(std::string_view source) {
  ParseResult result;
  Lexer lexer(source, result.diagnostics);
  auto tokens = lexer.run();
  if (has_errors(result.diagnostics)) return result;
  Parser parser(std::move(tokens), result.diagnostics);
  auto prog = parser.run();
  if (!prog || has_errors(result.diagnostics)) return result;
  Validator validator(*prog, result.diagnostics);
  validator.run();
  if (has_errors(result.diagnostics)) return result;
  result.program = std::move(prog);
  return result;
}

int count_loc(std::string_view source) {
  int loc = 0;
  std::size_t pos = 0;
  while (pos <= source.size()) {
    std::size_t eol = source.find('\n', pos);
    std::string_view line = source.substr(pos, eol == std::string_view::npos
                                                   ? std::string_view::npos
                                                   : eol - pos);
    for (char c : line)
      if (c != ' ' && c != '\t' && c != '\r') {
        ++loc;
        break;
      }
    if (eol == std::string_view::npos) break;
    pos = eol + 1;
  }
  return loc;
}

}  // namespace seuguard::frontend

namespace seuguard {
std::string format_diagnostic(const Diagnostic& d) {
  std::ostringstream os;
  os << (d.severity == Severity::Error ? "error" : "warning");
  if (d.span.line > 0) os << " at " << d.span.line << ":" << d.span.col;
  os << ": " << d.message;
  return os.str();
}
}  // namespace seuguard
