#include <doctest.h>

#include <random>

#include "seuguard/parser.hpp"
#include "seuguard/pretty.hpp"
#include "support/fixtures.hpp"
#include "support/gen.hpp"

using namespace seuguard;
using seuguard::testing::kGuardedIncrement;
using seuguard::testing::parse_ok;

TEST_CASE("guarded-increment program parses with five variables") {
  ast::Program p = parse_ok(kGuardedIncrement);
  CHECK(p.name == "f");
  CHECK(p.param_count == 2);
  auto vars = ast::list_variables(p);
  REQUIRE(vars.size() == 5);
  CHECK(vars == std::vector<std::string>{"x", "y", "output", "alarm", "count"});
}

TEST_CASE("empty program with a constant return") {
  ast::Program p = parse_ok("int f() { return 0; }");
  CHECK(p.param_count == 0);
  CHECK(ast::list_variables(p).empty());
  CHECK(p.body.size() == 1);
}

TEST_CASE("params only, no locals") {
  ast::Program p = parse_ok("int f(int a, int b) { return a + b; }");
  CHECK(ast::list_variables(p) == std::vector<std::string>{"a", "b"});
}

TEST_CASE("use before declaration is an error") {
  auto r = frontend::parse("int f(int x) { y = 1; }");
  REQUIRE_FALSE(r.ok());
  bool found = false;
  for (const auto& d : r.diagnostics)
    if (d.message.find("use before declaration") != std::string::npos) found = true;
  CHECK(found);
}

TEST_CASE("frontend error catalogue") {
  auto expect_error = [](const std::string& src, const std::string& needle) {
    auto r = frontend::parse(src);
    REQUIRE_FALSE(r.ok());
    bool found = false;
    for (const auto& d : r.diagnostics) {
      CHECK(d.severity == Severity::Error);
      if (d.message.find(needle) != std::string::npos) found = true;
    }
    std::string msg = "no diagnostic mentions '" + needle + "' for: " + src;
    CHECK_MESSAGE(found, msg);
  };
  expect_error("int f() { return $; }", "unexpected character");
  expect_error("int f( { return 0; }", "expected parameter type");
  expect_error("int f() { int a = 1; int a = 2; return a; }", "duplicate declaration");
  expect_error("int f(int a, bool a) { return 0; }", "duplicate declaration");
  expect_error("int f() { int a = true; return a; }", "initializer type");
  expect_error("int f(bool b) { return b; }", "return value must be int");
  expect_error("int f(int a) { if (a) { return 1; } return 0; }", "must be bool");
  expect_error("int f(int a) { a = 1; }", "output");
  expect_error("int f(int a) { return 1; a = 2; }", "unreachable");
  expect_error("int f() { int a = 2147483648; return a; }", "out of 32-bit range");
  expect_error("int f() { while (true) { int a = 1; } }", "local declarations must precede");
  expect_error("int f() { output 1; while (true) { print 1; } }",
               "no 'output' or 'return' inside");
  expect_error("int f(int a__b) { return 0; }", "double underscore");
  expect_error("int f() { return 0; } int g() { return 1; }", "trailing input");
  expect_error("int f(int a) { if (a > 0) { output 1; } }",
               "without an 'output' or 'return'");
}

TEST_CASE("output doubles as a variable name") {
  ast::Program p = parse_ok("int f() { int output = 1; output = output + 1; return output; }");
  CHECK(ast::list_variables(p) == std::vector<std::string>{"output"});
  // and still introduces output statements when not followed by '='
  ast::Program q = parse_ok("int f(int a) { output a; return a; }");
  CHECK(q.body.size() == 2);
}

TEST_CASE("pretty-print round trip on the benchmark") {
  ast::Program p = parse_ok(kGuardedIncrement);
  std::string printed = frontend::pretty_print(p);
  ast::Program again = parse_ok(printed);
  CHECK(ast::equal(p, again));
  CHECK(frontend::pretty_print(again) == printed);
}

TEST_CASE("pretty-print round trip on generated programs") {
  for (uint64_t seed = 1; seed <= 60; ++seed) {
    auto g = seuguard::testing::generate_program(seed);
    CAPTURE(seed);
    CAPTURE(g.source);
    ast::Program p = parse_ok(g.source);
    ast::Program again = parse_ok(frontend::pretty_print(p));
    CHECK(ast::equal(p, again));
  }
}

TEST_CASE("precedence round trips") {
  const char* src =
      "int f(int a, int b) {\n"
      "    int c = (a + b) * 2 - -a % 3;\n"
      "    bool d = !(a < b) && (b == 2 || a >= 1);\n"
      "    if (d) { c = a - (b - 1); }\n"
      "    return c;\n"
      "}\n";
  ast::Program p = parse_ok(src);
  ast::Program again = parse_ok(frontend::pretty_print(p));
  CHECK(ast::equal(p, again));
}

TEST_CASE("parse is total on byte noise") {
  std::mt19937_64 rng(42);
  for (int i = 0; i < 500; ++i) {
    std::string junk;
    int len = static_cast<int>(rng() % 200);
    for (int k = 0; k < len; ++k) junk.push_back(static_cast<char>(rng() % 256));
    auto r = frontend::parse(junk);
    if (!r.ok()) CHECK_FALSE(r.diagnostics.empty());
  }
  // and on truncations of a valid program
  std::string src = kGuardedIncrement;
  for (std::size_t cut = 0; cut < src.size(); cut += 7) {
    auto r = frontend::parse(src.substr(0, cut));
    if (!r.ok()) CHECK_FALSE(r.diagnostics.empty());
  }
}

TEST_CASE("list_variables is deterministic") {
  ast::Program p = parse_ok(kGuardedIncrement);
  auto a = ast::list_variables(p);
  auto b = ast::list_variables(parse_ok(kGuardedIncrement));
  CHECK(a == b);
}

TEST_CASE("loc counts non-blank lines") {
  CHECK(frontend::count_loc("a\n\n  \nb\n") == 2);
  CHECK(frontend::count_loc("") == 0);
  CHECK(frontend::count_loc("x") == 1);
}
