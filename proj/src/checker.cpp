#include "seuguard/checker.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "seuguard/cfg.hpp"
#include "seuguard/oracle.hpp"

namespace seuguard::checker {

int32_t flip_bit(int32_t value, int pos) {
  if (pos < 0 || pos > 31) throw std::out_of_range("bit position must be in 0..31");
  return static_cast<int32_t>(static_cast<uint32_t>(value) ^
                              (static_cast<uint32_t>(1) << pos));
}

namespace {

using namespace ast;

int32_t wrap_add(int32_t a, int32_t b) {
  return static_cast<int32_t>(static_cast<uint32_t>(a) + static_cast<uint32_t>(b));
}
int32_t wrap_sub(int32_t a, int32_t b) {
  return static_cast<int32_t>(static_cast<uint32_t>(a) - static_cast<uint32_t>(b));
}
int32_t wrap_mul(int32_t a, int32_t b) {
  return static_cast<int32_t>(static_cast<uint32_t>(a) * static_cast<uint32_t>(b));
}

struct CopyTrap {
  std::string message;
};
struct CopyReturn {};
struct CopyTruncated {};
struct NeedStreamValue {};

// How a copy's input() reads are served inside the composite.
enum class ReadMode { EnumeratePrefix, ReplaySegments };

struct OutputPointRec {
  int32_t value;
  bool phi;
};

// Execution state of one copy (base or shadow) of the composite. The shadow
// copy carries the hook table; hook occurrences are counted on both copies
// so the fault schedule refers to a common index space.
class CopyExec {
 public:
  CopyExec(const Program& prog, const prop::SafetySpec& spec,
           const engine::RunLimits& limits, const engine::InputDomain& domain,
           const std::map<int, int>& hooks_per_stmt, int target, int control_loop_id)
      : prog_(prog),
        spec_(spec),
        limits_(limits),
        domain_(domain),
        hooks_per_stmt_(hooks_per_stmt),
        target_(target),
        control_loop_id_(control_loop_id),
        buffer_(prop::buffer_capacity(spec)) {
    env_.assign(prog.vars.size(), 0);
    segment_log.emplace_back();
  }

  // configuration set by the driver before init()
  ReadMode read_mode = ReadMode::EnumeratePrefix;
  std::span<const int32_t> stream_prefix;                     // EnumeratePrefix
  const std::vector<std::vector<int32_t>>* replay = nullptr;  // ReplaySegments
  std::optional<oracle::Fault> fault;                         // shadow only
  bool record_trace = false;

  // observable state
  std::vector<OutputPointRec> output_points;
  std::vector<int32_t> input_log;
  std::vector<int32_t> enum_log;
  std::vector<std::vector<int32_t>> segment_log;
  std::vector<int> trace;
  bool phi_all = true;
  bool done = false;     // returned (or init finished for terminating shape)
  bool trapped = false;
  std::string trap_message;
  bool truncated = false;
  bool replay_overrun = false;
  bool stream_capped = false;
  bool needs_stream_value = false;
  long occurrences = 0;  // dynamic hook occurrences seen so far
  int fault_stmt_id = -1;
  int fault_line = 0;

  bool completed() const { return !trapped && !truncated && !needs_stream_value; }

  // Full run of this copy: parameter defs, local initializers, body. The
  // control loop, when present, stops normally at the unwind horizon.
  void run(std::span<const int32_t> values) {
    try {
      for (std::size_t i = 0; i < prog_.param_count && i < values.size(); ++i) {
        count_step(prog_.vars[i].decl_id);
        env_[i] = values[i];
      }
      for (std::size_t i = prog_.param_count; i < prog_.vars.size(); ++i) {
        const VarDecl& v = prog_.vars[i];
        count_step(v.decl_id);
        hook_gate(v.decl_id, v.span);
        env_[i] = eval(*v.init);
      }
      exec_block(prog_.body);
      done = true;
    } catch (const CopyTrap& t) {
      trapped = true;
      trap_message = t.message;
      done = true;
    } catch (const CopyReturn&) {
      done = true;
    } catch (const CopyTruncated&) {
      truncated = true;
      done = true;
    } catch (const NeedStreamValue&) {
      needs_stream_value = true;
      done = true;
    }
  }

  int32_t variable(int index) const { return env_[static_cast<std::size_t>(index)]; }

 private:

  void count_step(int stmt_id) {
    if (++steps_ > limits_.step_budget) throw CopyTruncated{};
    if (record_trace) trace.push_back(stmt_id);
  }

  // Fires the static hooks attached to a statement: each hook claims the
  // next dynamic occurrence; a scheduled occurrence flips the target once.
  void hook_gate(int stmt_id, Span span) {
    auto it = hooks_per_stmt_.find(stmt_id);
    if (it == hooks_per_stmt_.end()) return;
    for (int k = 0; k < it->second; ++k) {
      ++occurrences;
      if (fault && !fault_applied_ && occurrences == fault->occurrence) {
        env_[static_cast<std::size_t>(target_)] =
            flip_bit(env_[static_cast<std::size_t>(target_)], fault->bit);
        fault_applied_ = true;
        fault_stmt_id = stmt_id;
        fault_line = span.line;
      }
    }
  }

  bool truthy(int32_t v) const { return v != 0; }

  int32_t read_input() {
    int32_t v;
    if (read_mode == ReadMode::EnumeratePrefix) {
      if (segment_reads_ < domain_.stream_bound) {
        if (enum_pos_ < stream_prefix.size()) {
          v = stream_prefix[enum_pos_++];
        } else {
          throw NeedStreamValue{};
        }
        enum_log.push_back(v);
      } else {
        v = domain_.stream_lo;
        stream_capped = true;
      }
    } else {
      if (replay && segment_ < replay->size() &&
          replay_pos_ < (*replay)[segment_].size()) {
        v = (*replay)[segment_][replay_pos_++];
      } else {
        v = domain_.stream_lo;
        replay_overrun = true;
      }
    }
    ++segment_reads_;
    input_log.push_back(v);
    segment_log.back().push_back(v);
    return v;
  }

  int32_t eval(const Expr& e) {
    if (const auto* i = std::get_if<IntLit>(&e.node)) return i->value;
    if (const auto* b = std::get_if<BoolLit>(&e.node)) return b->value ? 1 : 0;
    if (const auto* v = std::get_if<VarRef>(&e.node))
      return env_[static_cast<std::size_t>(v->index)];
    if (const auto* u = std::get_if<Unary>(&e.node)) {
      int32_t x = eval(*u->operand);
      return u->op == UnOp::Neg ? wrap_sub(0, x) : (truthy(x) ? 0 : 1);
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
          if (r == 0) throw CopyTrap{"division by zero"};
          if (l == INT32_MIN && r == -1) return INT32_MIN;
          return l / r;
        case BinOp::Mod:
          if (r == 0) throw CopyTrap{"modulo by zero"};
          if (l == INT32_MIN && r == -1) return 0;
          return l % r;
        case BinOp::Lt: return l < r ? 1 : 0;
        case BinOp::Le: return l <= r ? 1 : 0;
        case BinOp::Gt: return l > r ? 1 : 0;
        case BinOp::Ge: return l >= r ? 1 : 0;
        case BinOp::Eq: return (bools ? truthy(l) == truthy(r) : l == r) ? 1 : 0;
        case BinOp::Ne: return (bools ? truthy(l) != truthy(r) : l != r) ? 1 : 0;
        default: break;
      }
      return 0;
    }
    return read_input();
  }

  void emit_output(int32_t value) {
    buffer_.append(value);
    bool phi = prop::eval_phi(spec_, buffer_);
    output_points.push_back({value, phi});
    phi_all = phi_all && phi;
  }

  void exec_block(const Block& block) {
    for (const auto& s : block) exec_stmt(*s);
  }

  void exec_stmt(const Stmt& s) {
    if (const auto* a = std::get_if<Assign>(&s.node)) {
      count_step(s.id);
      hook_gate(s.id, s.span);
      env_[static_cast<std::size_t>(a->index)] = eval(*a->value);
    } else if (const auto* i = std::get_if<If>(&s.node)) {
      count_step(s.id);
      hook_gate(s.id, s.span);
      if (truthy(eval(*i->cond)))
        exec_block(i->then_body);
      else
        exec_block(i->else_body);
    } else if (const auto* w = std::get_if<While>(&s.node)) {
      const bool top_loop = s.id == control_loop_id_;
      long iter = 0;
      while (true) {
        count_step(s.id);
        hook_gate(s.id, s.span);
        if (!truthy(eval(*w->cond))) break;
        if (iter == limits_.unwind) {
          // Unwind horizon: the designated control loop stops normally,
          // any other loop overrunning it is a truncation.
          if (top_loop) throw CopyReturn{};
          throw CopyTruncated{};
        }
        if (top_loop) {
          ++segment_;
          segment_reads_ = 0;
          replay_pos_ = 0;
          segment_log.emplace_back();
        }
        exec_block(w->body);
        ++iter;
      }
    } else if (const auto* o = std::get_if<Output>(&s.node)) {
      count_step(s.id);
      hook_gate(s.id, s.span);
      emit_output(eval(*o->value));
    } else if (const auto* r = std::get_if<Return>(&s.node)) {
      count_step(s.id);
      hook_gate(s.id, s.span);
      emit_output(eval(*r->value));
      throw CopyReturn{};
    } else {
      const auto& p = std::get<Print>(s.node);
      count_step(s.id);
      hook_gate(s.id, s.span);
      eval(*p.value);
    }
  }

  const Program& prog_;
  const prop::SafetySpec& spec_;
  const engine::RunLimits& limits_;
  const engine::InputDomain& domain_;
  const std::map<int, int>& hooks_per_stmt_;
  int target_;
  int control_loop_id_;

  std::vector<int32_t> env_;
  prop::OutputBuffer buffer_;
  long steps_ = 0;
  bool fault_applied_ = false;
  std::size_t enum_pos_ = 0;
  std::size_t replay_pos_ = 0;
  std::size_t segment_ = 0;
  int segment_reads_ = 0;
};

// One composite execution is the base copy followed by the shadow copy; for
// the control-loop shape the interleaved per-cycle schedule is observationally
// identical because the shadow replays the base's per-cycle input log.
class Driver {
 public:
  Driver(const instr::InstrumentedProgram& ip, const engine::InputDomain& domain,
         const engine::RunLimits& limits)
      : ip_(ip), spec_(ip.spec), domain_(domain), limits_(limits) {
    for (const auto& h : ip.hooks) hooks_per_stmt_[h.stmt_id]++;
  }

  // Base copy: no fault ever fires there, but its hook occurrences define
  // the schedule space (the pre-flip shadow is the base up to renaming).
  CopyExec run_base(std::span<const int32_t> params, std::span<const int32_t> prefix,
                    bool record_trace) {
    CopyExec base(*ip_.base, spec_, limits_, domain_, hooks_per_stmt_, ip_.target,
                  ip_.control_loop_id);
    base.read_mode = ReadMode::EnumeratePrefix;
    base.stream_prefix = prefix;
    base.record_trace = record_trace;
    base.run(params);
    return base;
  }

  CopyExec run_shadow(std::span<const int32_t> params, const CopyExec& base_run,
                      std::optional<oracle::Fault> fault, bool record_trace) {
    CopyExec shadow(ip_.shadow, spec_, limits_, domain_, hooks_per_stmt_, ip_.target,
                    ip_.control_loop_id);
    shadow.read_mode = ReadMode::ReplaySegments;
    shadow.replay = &base_run.segment_log;
    shadow.fault = fault;
    shadow.record_trace = record_trace;
    shadow.run(params);
    return shadow;
  }

 private:
  const instr::InstrumentedProgram& ip_;
  const prop::SafetySpec& spec_;
  const engine::InputDomain& domain_;
  const engine::RunLimits& limits_;
  std::map<int, int> hooks_per_stmt_;
};

void add_diag(engine::Verdict& v, std::set<std::string>& seen, const std::string& msg) {
  if (seen.insert(msg).second && seen.size() <= 8) v.diagnostics.push_back(msg);
}

struct CheckState {
  const instr::InstrumentedProgram* ip;
  const prop::SafetySpec* spec;
  const engine::FaultModel* fault;
  const engine::InputDomain* domain;
  const engine::RunLimits* limits;
  Driver* driver;
  engine::Verdict verdict;
  std::set<std::string> diag_seen;
  std::vector<int32_t> params;
};

engine::Counterexample build_counterexample(CheckState& st, const CopyExec& base_probe,
                                            long occ, int bit, engine::Direction dir) {
  CopyExec base = st.driver->run_base(st.params, base_probe.enum_log, true);
  CopyExec shadow =
      st.driver->run_shadow(st.params, base, oracle::Fault{occ, bit}, true);

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
  const auto& violating = dir == engine::Direction::FaultIntroducing
                              ? shadow.output_points
                              : base.output_points;
  for (std::size_t i = 0; i < violating.size(); ++i)
    if (!violating[i].phi) {
      cx.failing_output_point = static_cast<int>(i) + 1;
      break;
    }
  cx.replay_overrun = shadow.replay_overrun;

  // Independent self-validation: replay through the concrete interpreter of
  // the oracle module; the aggregate split must reproduce.
  oracle::RunRequest ff;
  ff.params = st.params;
  ff.mode = oracle::StreamMode::Enumerate;
  ff.stream_prefix = base.enum_log;
  ff.target = st.ip->target;
  oracle::ExecutionRecord ff_rec =
      oracle::run_concrete(*st.ip->base, *st.spec, ff, *st.limits, *st.domain);
  oracle::RunRequest fr;
  fr.params = st.params;
  fr.mode = oracle::StreamMode::Replay;
  fr.replay = &ff_rec.segment_log;
  fr.fault = oracle::Fault{occ, bit};
  fr.target = st.ip->target;
  oracle::ExecutionRecord fr_rec =
      oracle::run_concrete(*st.ip->base, *st.spec, fr, *st.limits, *st.domain);
  cx.replay_validated = ff_rec.terminated && fr_rec.terminated &&
                        ff_rec.phi_all != fr_rec.phi_all;
  if (!cx.replay_validated)
    throw std::logic_error("counterexample failed concrete replay validation");
  return cx;
}

bool process_input(CheckState& st, const CopyExec& base) {
  auto& v = st.verdict;
  v.explored_runs += 1;
  if (base.trapped) {
    add_diag(v, st.diag_seen, "base copy trapped: " + base.trap_message);
    return false;
  }
  if (base.truncated) {
    v.truncation_seen = true;
    return false;
  }
  long occ_count = base.occurrences;
  long occ_first = 1, occ_last = occ_count;
  switch (st.fault->trigger) {
    case engine::Trigger::NondetAnywhere: break;
    case engine::Trigger::FirstUse: occ_last = std::min<long>(occ_count, 1); break;
    case engine::Trigger::Disabled: occ_last = 0; break;
  }
  for (long occ = occ_first; occ <= occ_last; ++occ) {
    for (int bit = st.fault->bit_lo; bit <= st.fault->bit_hi; ++bit) {
      CopyExec shadow =
          st.driver->run_shadow(st.params, base, oracle::Fault{occ, bit}, false);
      v.explored_runs += 1;
      if (shadow.trapped) {
        add_diag(v, st.diag_seen, "shadow copy trapped: " + shadow.trap_message);
        continue;
      }
      if (shadow.truncated) {
        v.truncation_seen = true;
        continue;
      }
      // assert !(phi ^ phi') over the bounded trace aggregates
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

bool enumerate_streams(CheckState& st, std::vector<int32_t>& prefix) {
  CopyExec base = st.driver->run_base(st.params, prefix, false);
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

engine::Verdict check(const instr::InstrumentedProgram& ip,
                      const engine::FaultModel& fault, const engine::InputDomain& domain,
                      const engine::RunLimits& limits) {
  const ast::Program& p = *ip.base;
  if (domain.param_ranges.size() != p.param_count)
    throw std::invalid_argument("input domain must cover every parameter");
  for (const auto& [lo, hi] : domain.param_ranges)
    if (lo > hi) throw std::invalid_argument("empty parameter range");
  if (fault.bit_lo < 0 || fault.bit_hi > 31 || fault.bit_lo > fault.bit_hi)
    throw std::invalid_argument("fault bit range must lie within 0..31");

  Driver driver(ip, domain, limits);
  CheckState st;
  st.ip = &ip;
  st.spec = &ip.spec;
  st.fault = &fault;
  st.domain = &domain;
  st.limits = &limits;
  st.driver = &driver;
  st.verdict.bounds_used = {limits, domain.param_ranges, fault.bit_lo, fault.bit_hi};

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

engine::Verdict classify_variable(const ast::Program& p, const prop::SafetySpec& spec,
                                  int target, const Config& config,
                                  const slicer::Slice& slice) {
  if (target < 0 || target >= static_cast<int>(p.vars.size()))
    throw std::invalid_argument("target variable is not in the program");
  if (!slicer::in_slice(slice, target)) {
    engine::Verdict v;
    v.classification = engine::Classification::NonCrv;
    v.pruned_by_slice = true;
    return v;
  }
  instr::InstrumentedProgram ip = instr::self_compose(p, spec, target);
  engine::FaultModel fault = config.fault;
  fault.target = target;
  return check(ip, fault, config.domain, config.limits);
}

engine::Verdict classify_variable(const ast::Program& p, const prop::SafetySpec& spec,
                                  int target, const Config& config) {
  cfg::Cfg graph = cfg::build_cfg(p);
  cfg::Pdg pdg = cfg::build_pdg(graph);
  int out_var = ast::find_variable(p, spec.output_variable);
  if (out_var < 0)
    throw std::invalid_argument("property variable is not declared in the program");
  slicer::Slice slice = slicer::slice_at_output_points(pdg, out_var);
  return classify_variable(p, spec, target, config, slice);
}

}  // namespace seuguard::checker
