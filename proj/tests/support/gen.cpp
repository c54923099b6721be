#include "gen.hpp"

#include <sstream>

namespace seuguard::testing {

namespace {

// Deterministic generator of small valid CtrlC programs. Bodies end in a
// return of the output variable (or a while(true) loop emitting it), locals
// are declared before use, expressions are typed by construction.
class Gen {
 public:
  Gen(uint64_t seed, const GenOptions& opt) : rng_(seed), opt_(opt) {}

  GeneratedProgram run() {
    int params = pick(0, opt_.max_params);
    for (int i = 0; i < params; ++i) {
      bool is_bool = chance(15);
      vars_.push_back({"p" + std::to_string(i), is_bool});
      int32_t lo = chance(30) ? -2 : 0;
      int32_t size = is_bool ? 2 : pick(2, 8);
      out_.domains.push_back(
          {vars_.back().name,
           is_bool ? std::pair<int32_t, int32_t>{0, 1}
                   : std::pair<int32_t, int32_t>{lo, lo + size - 1}});
    }
    param_count_ = static_cast<int>(vars_.size());

    int locals = pick(1, 4);
    for (int i = 0; i < locals; ++i)
      vars_.push_back({"v" + std::to_string(i), i > 0 && chance(20)});
    // the output variable is the first int local (v0 is always int)
    output_var_ = "v0";

    control_loop_ = opt_.allow_loops && chance(opt_.control_loop_percent);
    // input() inside a control loop would add one enumeration dimension per
    // cycle; keep streams to terminating programs where the per-run cap
    // bounds them
    if (control_loop_) input_ok_ = false;

    // initializer expressions come first: counters are not visible yet and
    // each initializer may only read variables declared before it
    std::vector<std::string> inits;
    for (std::size_t i = static_cast<std::size_t>(param_count_); i < vars_.size(); ++i)
      inits.push_back(vars_[i].is_bool ? bool_expr_limited(i, 1)
                                       : int_expr_limited(i, 1));
    loop_count_ = 0;
    budget_ = pick(3, opt_.max_body_stmts - 2);

    std::ostringstream body;
    gen_block(body, 1, /*depth=*/0);
    if (control_loop_) {
      indent(body, 1);
      body << "while (true) {\n";
      std::ostringstream inner;
      budget_ = pick(1, 4);
      gen_block(inner, 2, 1);
      body << inner.str();
      indent(body, 2);
      body << "output " << output_var_ << ";\n";
      indent(body, 1);
      body << "}\n";
    } else {
      if (opt_.allow_loops && chance(35) && emit_output_midway_) {
        // already emitted inside; still return at the end
      }
      indent(body, 1);
      body << "return " << output_var_ << ";\n";
    }

    std::ostringstream src;
    src << "int gen(";
    for (int i = 0; i < param_count_; ++i) {
      if (i) src << ", ";
      src << (vars_[static_cast<std::size_t>(i)].is_bool ? "bool " : "int ")
          << vars_[static_cast<std::size_t>(i)].name;
    }
    src << ") {\n";
    for (std::size_t i = static_cast<std::size_t>(param_count_); i < vars_.size(); ++i) {
      const Var& v = vars_[i];
      src << "    " << (v.is_bool ? "bool " : "int ") << v.name << " = "
          << inits[i - static_cast<std::size_t>(param_count_)] << ";\n";
    }
    for (int c = 0; c < loop_count_; ++c)
      src << "    int ctr" << c << " = 0;\n";
    src << body.str();
    src << "}\n";

    out_.source = src.str();
    gen_property();
    out_.stream_lo = 0;
    out_.stream_hi = chance(50) ? 1 : 3;
    return out_;
  }

 private:
  struct Var {
    std::string name;
    bool is_bool;
  };

  int pick(int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng_);
  }
  bool chance(int percent) { return pick(1, 100) <= percent; }

  static void indent(std::ostringstream& os, int depth) {
    for (int i = 0; i < depth; ++i) os << "    ";
  }

  // Variable pools. Reads may use anything declared; writes avoid loop
  // counters and, inside loop bodies, the output variable stays writable so
  // faults can interact with loops.
  std::string read_var(bool want_bool, std::size_t limit) {
    std::vector<std::string> pool;
    for (std::size_t i = 0; i < std::min(limit, vars_.size()); ++i)
      if (vars_[i].is_bool == want_bool) pool.push_back(vars_[i].name);
    if (!want_bool)
      for (int c = 0; c < visible_counters_; ++c) pool.push_back("ctr" + std::to_string(c));
    if (pool.empty()) return want_bool ? "false" : std::to_string(pick(-3, 8));
    return pool[static_cast<std::size_t>(pick(0, static_cast<int>(pool.size()) - 1))];
  }

  std::string write_var() {
    std::vector<std::string> pool;
    for (const auto& v : vars_) pool.push_back(v.name);
    return pool[static_cast<std::size_t>(pick(0, static_cast<int>(pool.size()) - 1))];
  }

  bool var_is_bool(const std::string& name) const {
    for (const auto& v : vars_)
      if (v.name == name) return v.is_bool;
    return false;  // counters are int
  }

  std::string int_expr_limited(std::size_t limit, int depth) {
    if (depth <= 0 || chance(40)) {
      int roll = pick(0, 9);
      if (roll < 4) return std::to_string(pick(-3, 9));
      if (roll < 9 || !opt_.allow_input || !input_ok_) return read_var(false, limit);
      return "input()";
    }
    int roll = pick(0, 9);
    if (roll == 9) return "-" + int_expr_limited(limit, depth - 1);
    const char* op = "+";
    if (roll < 4) op = "+";
    else if (roll < 6) op = "-";
    else if (roll < 8) op = "*";
    else op = opt_.allow_division ? (chance(50) ? "/" : "%") : "+";
    return "(" + int_expr_limited(limit, depth - 1) + " " + op + " " +
           int_expr_limited(limit, depth - 1) + ")";
  }

  std::string bool_expr_limited(std::size_t limit, int depth) {
    if (depth <= 0 || chance(30)) {
      int roll = pick(0, 5);
      if (roll == 0) return chance(50) ? "true" : "false";
      if (roll == 1) {
        std::string v = read_var(true, limit);
        return v;
      }
      const char* cmps[] = {"<", "<=", ">", ">=", "==", "!="};
      return "(" + int_expr_limited(limit, 1) + " " + cmps[pick(0, 5)] + " " +
             int_expr_limited(limit, 1) + ")";
    }
    int roll = pick(0, 3);
    if (roll == 0) return "!" + bool_expr_limited(limit, depth - 1);
    const char* op = roll == 1 ? "&&" : "||";
    return "(" + bool_expr_limited(limit, depth - 1) + " " + op + " " +
           bool_expr_limited(limit, depth - 1) + ")";
  }

  std::string int_expr(int depth) { return int_expr_limited(vars_.size(), depth); }
  std::string bool_expr(int depth) { return bool_expr_limited(vars_.size(), depth); }

  void gen_block(std::ostringstream& os, int depth, int nest) {
    while (budget_ > 0) {
      --budget_;
      int roll = pick(0, 99);
      if (roll < 50) {
        std::string target = write_var();
        indent(os, depth);
        os << target << " = " << (var_is_bool(target) ? bool_expr(2) : int_expr(2))
           << ";\n";
      } else if (roll < 72 && nest < 2) {
        indent(os, depth);
        os << "if (" << bool_expr(2) << ") {\n";
        int saved = budget_;
        budget_ = std::min(saved, pick(1, 3));
        int spent = budget_;
        gen_block(os, depth + 1, nest + 1);
        spent -= budget_;
        budget_ = saved - spent;
        indent(os, depth);
        if (chance(60)) {
          os << "} else {\n";
          saved = budget_;
          budget_ = std::min(saved, pick(1, 2));
          spent = budget_;
          gen_block(os, depth + 1, nest + 1);
          spent -= budget_;
          budget_ = saved - spent;
          indent(os, depth);
        }
        os << "}\n";
      } else if (roll < 84 && nest < 2 && opt_.allow_loops && loop_count_ < 2) {
        int c = loop_count_++;
        int bound = pick(1, 3);
        indent(os, depth);
        os << "ctr" << c << " = 0;\n";
        indent(os, depth);
        // flip-robust guard: a single upset can only shorten the loop or
        // restart it once from within [0, bound), so no single fault drives
        // it past the unwind horizon
        os << "while (ctr" << c << " >= 0 && ctr" << c << " < " << bound << ") {\n";
        ++visible_counters_;
        int saved = budget_;
        budget_ = std::min(saved, pick(1, 3));
        int spent = budget_;
        gen_block(os, depth + 1, nest + 1);
        spent -= budget_;
        budget_ = saved - spent;
        if (!control_loop_ && chance(25)) {
          indent(os, depth + 1);
          os << "output " << output_var_ << ";\n";
          emit_output_midway_ = true;
        }
        indent(os, depth + 1);
        os << "ctr" << c << " = ctr" << c << " + 1;\n";
        indent(os, depth);
        os << "}\n";
      } else if (roll < 92) {
        indent(os, depth);
        os << "print " << (chance(50) ? int_expr(1) : bool_expr(1)) << ";\n";
      } else {
        std::string target = write_var();
        indent(os, depth);
        os << target << " = " << (var_is_bool(target) ? bool_expr(1) : int_expr(1))
           << ";\n";
      }
    }
  }

  void gen_property() {
    if (emit_output_midway_ || (control_loop_ && chance(40))) {
      if (chance(50)) {
        int lo = pick(-2, 2);
        int hi = lo + pick(3, 8);
        int n = pick(2, 3);
        out_.property = "window " + output_var_ + " in (" + std::to_string(lo) + "," +
                        std::to_string(hi) + ") persist " + std::to_string(n);
        return;
      }
    }
    const char* cmps[] = {"<=", "<", ">=", ">"};
    out_.property = "always " + output_var_ + " " + cmps[pick(0, 3)] + " " +
                    std::to_string(pick(-4, 12));
  }

  std::mt19937_64 rng_;
  GenOptions opt_;
  std::vector<Var> vars_;
  int param_count_ = 0;
  std::string output_var_;
  bool input_ok_ = true;
  bool control_loop_ = false;
  bool emit_output_midway_ = false;
  int loop_count_ = 0;
  int visible_counters_ = 0;
  int budget_ = 0;
  GeneratedProgram out_;
};

}  // namespace

GeneratedProgram generate_program(uint64_t seed, const GenOptions& options) {
  Gen g(seed, options);
  return g.run();
}

report::AnalysisConfig config_for(const GeneratedProgram& g, report::Engine engine,
                                  int unwind, long step_budget) {
  report::AnalysisConfig config;
  config.source = g.source;
  config.source_name = "generated";
  config.property = g.property;
  for (const auto& [name, range] : g.domains) config.domains[name] = range;
  config.stream_lo = g.stream_lo;
  config.stream_hi = g.stream_hi;
  config.stream_bound = 2;
  config.unwind = unwind;
  config.step_budget = step_budget;
  config.engine = engine;
  return config;
}

}  // namespace seuguard::testing
