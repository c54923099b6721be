#include "seuguard/oracle.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace seuguard::oracle {

namespace {

using namespace ast;

struct Trap {
  std::string message;
};

struct Stop {};  // normal early stop (return, bounded control loop, abort)

int32_t wrap_add(int32_t a, int32_t b) {
  return static_cast<int32_t>(static_cast<uint32_t>(a) + static_cast<uint32_t>(b));
}
int32_t wrap_sub(int32_t a, int32_t b) {
  return static_cast<int32_t>(static_cast<uint32_t>(a) - static_cast<uint32_t>(b));
}
int32_t wrap_mul(int32_t a, int32_t b) {
  return static_cast<int32_t>(static_cast<uint32_t>(a) * static_cast<uint32_t>(b));
}

class Interp {
 public:
  Interp(const Program& p, const prop::SafetySpec& spec, const RunRequest& req,
         const engine::RunLimits& limits, const engine::InputDomain& domain)
      : prog_(p),
        spec_(spec),
        req_(req),
        limits_(limits),
        domain_(domain),
        buffer_(prop::buffer_capacity(spec)),
        control_loop_(control_loop_stmt(p)) {}

  ExecutionRecord run() {
    env_.assign(prog_.vars.size(), 0);
    rec_.segment_log.emplace_back();
    try {
      for (std::size_t i = 0; i < prog_.param_count; ++i) {
        step(prog_.vars[i].decl_id);
        env_[i] = i < req_.params.size() ? req_.params[i] : 0;
      }
      for (std::size_t i = prog_.param_count; i < prog_.vars.size(); ++i) {
        const VarDecl& v = prog_.vars[i];
        step(v.decl_id);
        fault_gate(*v.init, v.decl_id, v.span);
        env_[i] = eval(*v.init);
      }
      exec_block(prog_.body);
      rec_.terminated = true;
    } catch (const Trap& t) {
      rec_.trapped = true;
      rec_.trap_message = t.message;
    } catch (const Stop&) {
      // stopped_normally_ distinguishes return/bounded-loop from truncation
      rec_.terminated = stopped_normally_;
    }
    rec_.target_use_occurrences = occurrences_;
    return std::move(rec_);
  }

 private:
  void step(int stmt_id) {
    if (++rec_.steps > limits_.step_budget) {
      stopped_normally_ = false;
      throw Stop{};
    }
    if (req_.record_trace) rec_.trace.push_back(stmt_id);
  }

  // Before an expression evaluates, its syntactic target-use slots claim the
  // next occurrence indices; a scheduled flip lands here, ahead of any read.
  void fault_gate(const Expr& e, int stmt_id, Span span) {
    if (req_.target < 0) return;
    int k = count_uses(e, req_.target);
    if (k == 0) return;
    if (req_.fault && !fault_applied_ && occurrences_ < req_.fault->occurrence &&
        req_.fault->occurrence <= occurrences_ + k) {
      env_[static_cast<std::size_t>(req_.target)] ^=
          static_cast<int32_t>(static_cast<uint32_t>(1) << req_.fault->bit);
      fault_applied_ = true;
      rec_.fault_stmt_id = stmt_id;
      rec_.fault_line = span.line;
    }
    occurrences_ += k;
  }

  bool truthy(int32_t v) const { return v != 0; }

  int32_t eval(const Expr& e) {
    if (const auto* i = std::get_if<IntLit>(&e.node)) return i->value;
    if (const auto* b = std::get_if<BoolLit>(&e.node)) return b->value ? 1 : 0;
    if (const auto* v = std::get_if<VarRef>(&e.node))
      return env_[static_cast<std::size_t>(v->index)];
    if (const auto* u = std::get_if<Unary>(&e.node)) {
      int32_t x = eval(*u->operand);
      if (u->op == UnOp::Neg) return wrap_sub(0, x);
      return truthy(x) ? 0 : 1;
    }
    if (const auto* b = std::get_if<Binary>(&e.node)) {
      if (b->op == BinOp::And) {
        if (!truthy(eval(*b->lhs))) return 0;
        return truthy(eval(*b->rhs)) ? 1 : 0;
      }
      if (b->op == BinOp::Or) {
        if (truthy(eval(*b->lhs))) return 1;
        return truthy(eval(*b->rhs)) ? 1 : 0;
      }
      int32_t l = eval(*b->lhs);
      int32_t r = eval(*b->rhs);
      bool bools = b->lhs->type == Type::Bool;
      switch (b->op) {
        case BinOp::Add: return wrap_add(l, r);
        case BinOp::Sub: return wrap_sub(l, r);
        case BinOp::Mul: return wrap_mul(l, r);
        case BinOp::Div:
          if (r == 0) throw Trap{"division by zero"};
          if (l == INT32_MIN && r == -1) return INT32_MIN;  // wraps
          return l / r;
        case BinOp::Mod:
          if (r == 0) throw Trap{"modulo by zero"};
          if (l == INT32_MIN && r == -1) return 0;
          return l % r;
        case BinOp::Lt: return l < r ? 1 : 0;
        case BinOp::Le: return l <= r ? 1 : 0;
        case BinOp::Gt: return l > r ? 1 : 0;
        case BinOp::Ge: return l >= r ? 1 : 0;
        case BinOp::Eq:
          return (bools ? truthy(l) == truthy(r) : l == r) ? 1 : 0;
        case BinOp::Ne:
          return (bools ? truthy(l) != truthy(r) : l != r) ? 1 : 0;
        default: break;
      }
      return 0;
    }
    return read_input();
  }

  int32_t read_input() {
    int32_t v;
    if (req_.mode == StreamMode::Enumerate) {
      if (segment_reads_ < domain_.stream_bound) {
        if (enum_pos_ < req_.stream_prefix.size()) {
          v = req_.stream_prefix[enum_pos_++];
        } else {
          rec_.needs_stream_value = true;
          stopped_normally_ = false;
          throw Stop{};
        }
        rec_.enum_log.push_back(v);
      } else {
        v = domain_.stream_lo;
        rec_.stream_capped = true;
      }
    } else {
      const auto& segments = *req_.replay;
      if (segment_ < segments.size() &&
          replay_pos_ < segments[segment_].size()) {
        v = segments[segment_][replay_pos_++];
      } else {
        v = domain_.stream_lo;
        rec_.replay_overrun = true;
      }
    }
    ++segment_reads_;
    rec_.input_log.push_back(v);
    rec_.segment_log.back().push_back(v);
    return v;
  }

  void emit_output(int32_t value, int stmt_id) {
    buffer_.append(value);
    bool phi = prop::eval_phi(spec_, buffer_);
    rec_.output_points.push_back({value, phi, stmt_id});
    rec_.phi_all = rec_.phi_all && phi;
  }

  void exec_block(const Block& block) {
    for (const auto& s : block) exec_stmt(*s);
  }

  void exec_stmt(const Stmt& s) {
    if (const auto* a = std::get_if<Assign>(&s.node)) {
      step(s.id);
      fault_gate(*a->value, s.id, s.span);
      env_[static_cast<std::size_t>(a->index)] = eval(*a->value);
    } else if (const auto* i = std::get_if<If>(&s.node)) {
      step(s.id);
      fault_gate(*i->cond, s.id, s.span);
      if (truthy(eval(*i->cond)))
        exec_block(i->then_body);
      else
        exec_block(i->else_body);
    } else if (const auto* w = std::get_if<While>(&s.node)) {
      const bool top_loop = s.id == control_loop_;
      long iter = 0;
      while (true) {
        step(s.id);
        fault_gate(*w->cond, s.id, s.span);
        if (!truthy(eval(*w->cond))) break;
        if (iter == limits_.unwind) {
          // Bounded exploration horizon: the designated control loop stops
          // normally, any other loop overrunning the bound is a truncation.
          stopped_normally_ = top_loop;
          throw Stop{};
        }
        if (top_loop) {
          ++segment_;
          segment_reads_ = 0;
          replay_pos_ = 0;
          rec_.segment_log.emplace_back();
        }
        exec_block(w->body);
        ++iter;
      }
    } else if (const auto* o = std::get_if<Output>(&s.node)) {
      step(s.id);
      fault_gate(*o->value, s.id, s.span);
      emit_output(eval(*o->value), s.id);
    } else if (const auto* r = std::get_if<Return>(&s.node)) {
      step(s.id);
      fault_gate(*r->value, s.id, s.span);
      emit_output(eval(*r->value), s.id);
      stopped_normally_ = true;
      throw Stop{};
    } else {
      const auto& p = std::get<Print>(s.node);
      step(s.id);
      fault_gate(*p.value, s.id, s.span);
      eval(*p.value);  // retained use site; value discarded
    }
  }

  const Program& prog_;
  const prop::SafetySpec& spec_;
  const RunRequest& req_;
  const engine::RunLimits& limits_;
  const engine::InputDomain& domain_;

  std::vector<int32_t> env_;
  prop::OutputBuffer buffer_;
  ExecutionRecord rec_;
  int control_loop_;
  long occurrences_ = 0;
  bool fault_applied_ = false;
  bool stopped_normally_ = true;
  std::size_t enum_pos_ = 0;
  std::size_t replay_pos_ = 0;
  std::size_t segment_ = 0;
  int segment_reads_ = 0;
};

void add_diag(engine::Verdict& v, std::set<std::string>& seen, const std::string& msg) {
  if (seen.insert(msg).second && seen.size() <= 8) v.diagnostics.push_back(msg);
}

}  // namespace

ExecutionRecord run_concrete(const ast::Program& p, const prop::SafetySpec& spec,
                             const RunRequest& request, const engine::RunLimits& limits,
                             const engine::InputDomain& domain) {
  if (request.fault && (request.fault->bit < 0 || request.fault->bit > 31))
    throw std::out_of_range("fault bit position must be in 0..31");
  Interp interp(p, spec, request, limits, domain);
  return interp.run();
}

namespace {

struct ClassifyState {
  const ast::Program* prog;
  const prop::SafetySpec* spec;
  int target;
  const engine::InputDomain* domain;
  const engine::FaultModel* fault;
  const engine::RunLimits* limits;
  engine::Verdict verdict;
  std::set<std::string> diag_seen;
  std::vector<int32_t> params;
  bool done = false;
};

engine::Counterexample build_counterexample(ClassifyState& st,
                                            const ExecutionRecord& base_probe,
                                            long occ, int bit,
                                            engine::Direction dir) {
  // Re-run both sides with trace recording for the full counterexample.
  RunRequest base_req;
  base_req.params = st.params;
  base_req.mode = StreamMode::Enumerate;
  base_req.stream_prefix = base_probe.enum_log;
  base_req.target = st.target;
  base_req.record_trace = true;
  ExecutionRecord base = run_concrete(*st.prog, *st.spec, base_req, *st.limits, *st.domain);

  RunRequest shadow_req;
  shadow_req.params = st.params;
  shadow_req.mode = StreamMode::Replay;
  shadow_req.replay = &base.segment_log;
  shadow_req.fault = Fault{occ, bit};
  shadow_req.target = st.target;
  shadow_req.record_trace = true;
  ExecutionRecord shadow =
      run_concrete(*st.prog, *st.spec, shadow_req, *st.limits, *st.domain);

  engine::Counterexample cx;
  cx.param_values = st.params;
  cx.stream_values = base.input_log;
  cx.hook_stmt_id = shadow.fault_stmt_id;
  cx.hook_line = shadow.fault_line;
  cx.occurrence = occ;
  cx.bit_position = bit;
  cx.direction = dir;
  cx.base_trace = base.trace;
  cx.shadow_trace = shadow.trace;
  std::size_t points = std::max(base.output_points.size(), shadow.output_points.size());
  for (std::size_t i = 0; i < points; ++i) {
    engine::OutputPointPair pair;
    if (i < base.output_points.size()) {
      pair.base_value = base.output_points[i].value;
      pair.base_phi = base.output_points[i].phi;
    }
    if (i < shadow.output_points.size()) {
      pair.shadow_value = shadow.output_points[i].value;
      pair.shadow_phi = shadow.output_points[i].phi;
    }
    cx.output_points.push_back(pair);
  }
  const auto& violating =
      dir == engine::Direction::FaultIntroducing ? shadow.output_points : base.output_points;
  for (std::size_t i = 0; i < violating.size(); ++i)
    if (!violating[i].phi) {
      cx.failing_output_point = static_cast<int>(i) + 1;
      break;
    }
  cx.replay_overrun = shadow.replay_overrun;
  // Self-validation: the recorded fault must reproduce the aggregate split.
  cx.replay_validated = base.phi_all != shadow.phi_all;
  return cx;
}

// Explores faults for one complete fault-free run; returns true when a
// witness was found (verdict filled, enumeration stops).
bool process_input(ClassifyState& st, const ExecutionRecord& base) {
  auto& v = st.verdict;
  v.explored_runs += 1;
  if (base.trapped) {
    add_diag(v, st.diag_seen, "fault-free run trapped: " + base.trap_message);
    return false;
  }
  if (!base.terminated) {
    v.truncation_seen = true;
    return false;
  }
  long occ_count = base.target_use_occurrences;
  long occ_first = 1, occ_last = occ_count;
  switch (st.fault->trigger) {
    case engine::Trigger::NondetAnywhere: break;
    case engine::Trigger::FirstUse: occ_last = std::min<long>(occ_count, 1); break;
    case engine::Trigger::Disabled: occ_last = 0; break;
  }
  for (long occ = occ_first; occ <= occ_last; ++occ) {
    for (int bit = st.fault->bit_lo; bit <= st.fault->bit_hi; ++bit) {
      RunRequest req;
      req.params = st.params;
      req.mode = StreamMode::Replay;
      req.replay = &base.segment_log;
      req.fault = Fault{occ, bit};
      req.target = st.target;
      ExecutionRecord shadow = run_concrete(*st.prog, *st.spec, req, *st.limits, *st.domain);
      v.explored_runs += 1;
      if (shadow.trapped) {
        add_diag(v, st.diag_seen, "faulted run trapped: " + shadow.trap_message);
        continue;
      }
      if (!shadow.terminated) {
        v.truncation_seen = true;
        continue;
      }
      bool introducing = base.phi_all && !shadow.phi_all;
      bool masking = shadow.phi_all && !base.phi_all;
      if (!introducing && !masking) continue;
      auto dir = introducing ? engine::Direction::FaultIntroducing
                             : engine::Direction::FaultMasking;
      v.classification = engine::Classification::Crv;
      v.direction = dir;
      v.counterexample = build_counterexample(st, base, occ, bit, dir);
      return true;
    }
  }
  return false;
}

// Depth-first enumeration of the input() stream, values ascending.
bool enumerate_streams(ClassifyState& st, std::vector<int32_t>& prefix) {
  RunRequest req;
  req.params = st.params;
  req.mode = StreamMode::Enumerate;
  req.stream_prefix = prefix;
  req.target = st.target;
  ExecutionRecord base =
      run_concrete(*st.prog, *st.spec, req, *st.limits, *st.domain);
  if (base.needs_stream_value) {
    for (int64_t v = st.domain->stream_lo; v <= st.domain->stream_hi; ++v) {
      prefix.push_back(static_cast<int32_t>(v));
      if (enumerate_streams(st, prefix)) return true;
      prefix.pop_back();
    }
    return false;
  }
  return process_input(st, base);
}

}  // namespace

engine::Verdict oracle_classify(const ast::Program& p, const prop::SafetySpec& spec,
                                int target, const engine::InputDomain& domain,
                                const engine::FaultModel& fault,
                                const engine::RunLimits& limits) {
  if (target < 0 || target >= static_cast<int>(p.vars.size()))
    throw std::invalid_argument("target variable is not in the program");
  if (domain.param_ranges.size() != p.param_count)
    throw std::invalid_argument("input domain must cover every parameter");
  for (const auto& [lo, hi] : domain.param_ranges)
    if (lo > hi) throw std::invalid_argument("empty parameter range");
  if (fault.bit_lo < 0 || fault.bit_hi > 31 || fault.bit_lo > fault.bit_hi)
    throw std::invalid_argument("fault bit range must lie within 0..31");

  ClassifyState st;
  st.prog = &p;
  st.spec = &spec;
  st.target = target;
  st.domain = &domain;
  st.fault = &fault;
  st.limits = &limits;
  st.verdict.bounds_used = {limits, domain.param_ranges, fault.bit_lo, fault.bit_hi};

  // Parameter tuples ascending lexicographically, first parameter most
  // significant.
  st.params.assign(p.param_count, 0);
  std::vector<int64_t> cursor(p.param_count);
  for (std::size_t i = 0; i < p.param_count; ++i) cursor[i] = domain.param_ranges[i].first;

  bool witness = false;
  bool more = true;
  while (more) {
    for (std::size_t i = 0; i < p.param_count; ++i)
      st.params[i] = static_cast<int32_t>(cursor[i]);
    std::vector<int32_t> prefix;
    if (enumerate_streams(st, prefix)) {
      witness = true;
      break;
    }
    more = false;
    for (std::size_t i = p.param_count; i-- > 0;) {
      if (cursor[i] < domain.param_ranges[i].second) {
        ++cursor[i];
        for (std::size_t j = i + 1; j < p.param_count; ++j)
          cursor[j] = domain.param_ranges[j].first;
        more = true;
        break;
      }
    }
  }

  if (!witness) {
    st.verdict.classification = st.verdict.truncation_seen
                                    ? engine::Classification::Unknown
                                    : engine::Classification::NonCrv;
  }
  return st.verdict;
}

}  // namespace seuguard::oracle
