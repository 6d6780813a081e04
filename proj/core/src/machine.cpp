#include "aliascalc/machine.hpp"

#include <cassert>
#include <sstream>
#include <stdexcept>

#include "aliascalc/printer.hpp"
#include "aliascalc/validate.hpp"

namespace aliascalc {

const char* mode_name(AnalysisOptions::Mode m) {
  return m == AnalysisOptions::Mode::OverApprox ? "overapprox" : "cut";
}

const char* halt_name(Report::Halt h) {
  return h == Report::Halt::Converged ? "converged" : "step-budget-exhausted";
}

std::string KItem::render() const {
  switch (kind) {
    case Kind::Instr: return print_instruction(*instr);
    case Kind::EndThen: return "[end-then]";
    case Kind::EndElse: return "[end-else]";
    case Kind::LoopMark: return "[end-loop]";
    case Kind::CallMark: return "[ret " + fname + "]";
    case Kind::QCallMark: return "[qret " + fname + "]";
  }
  return "?";
}

namespace {

KItem item_instr(InstrPtr i) { return {KItem::Kind::Instr, std::move(i), ""}; }
KItem item_end_then(InstrPtr pending_else) {
  return {KItem::Kind::EndThen, std::move(pending_else), ""};
}
KItem item_end_else() { return {KItem::Kind::EndElse, nullptr, ""}; }
KItem item_loop_mark(InstrPtr body) { return {KItem::Kind::LoopMark, std::move(body), ""}; }
KItem item_call_mark(std::string f) { return {KItem::Kind::CallMark, nullptr, std::move(f)}; }
KItem item_qcall_mark(std::string f) { return {KItem::Kind::QCallMark, nullptr, std::move(f)}; }

std::string k_top_render(const MachineConfig& c) {
  std::string out;
  int shown = 0;
  for (auto it = c.k.rbegin(); it != c.k.rend() && shown < 3; ++it, ++shown) {
    if (shown) out += "  >>  ";
    out += it->render();
  }
  if (c.k.size() > 3) out += "  >>  ...";
  if (out.empty()) out = ".";
  return out;
}

std::string backtracking_render(const MachineConfig& c) {
  std::ostringstream os;
  os << "te:" << c.bkt_te.size() << " l:" << c.bkt_l.size();
  for (const auto& [f, frames] : c.bkt_cf)
    if (!frames.empty()) os << " cf(" << f << "):" << frames.size();
  for (const auto& [f, paths] : c.bkt_qf)
    if (!paths.empty()) os << " qf(" << f << "):" << paths.size();
  return os.str();
}

AliasRelation fold_iterates(AliasRelation base, const std::vector<AliasRelation>& iterates) {
  for (const auto& r : iterates) base = absorb_union(std::move(base), r);
  return base;
}

// Widening for iterations whose pair count keeps changing: star the pairs
// that grew out of the previous relation, then accept only if everything
// else in the current relation re-derives by dot-completion from that
// starred core. The closure is the new relation, so nothing the oracle can
// reach is dropped.
std::optional<AliasRelation> widen_iteration(const AliasRelation& prev,
                                             const AliasRelation& cur, const VarEnv& env,
                                             const ClassTable& ct, std::size_t depth) {
  auto m = cover_lasso(prev, cur);
  if (!m) return std::nullopt;
  AliasRelation core = regularize(*m);
  AliasRelation closed =
      dot_complete_capped(core, env, ct, longest_expression(cur) + depth);
  for (const AliasPair& q : cur.pairs())
    if (!pair_subsumed(closed, q)) return std::nullopt;
  // The core plus whatever of the current relation it does not already
  // express; the full closure stays implicit in the judgment.
  return absorb_union(std::move(core), cur);
}

struct Stepper {
  MachineConfig& c;
  const Program& p;
  const AnalysisOptions& opts;
  const char* rule = "?";

  bool clubs_enabled() const { return opts.mode == AnalysisOptions::Mode::OverApprox; }

  void dispatch() {
    KItem top = c.k.back();
    switch (top.kind) {
      case KItem::Kind::Instr: instruction(*top.instr); break;
      case KItem::Kind::EndThen: end_then(top); break;
      case KItem::Kind::EndElse: end_else(); break;
      case KItem::Kind::LoopMark: loop_mark(top); break;
      case KItem::Kind::CallMark: call_mark(top); break;
      case KItem::Kind::QCallMark: qcall_mark(top); break;
    }
  }

  void instruction(const Instruction& i) {
    using K = Instruction::Kind;
    switch (i.kind) {
      case K::Skip:
        rule = "skip";
        c.k.pop_back();
        break;
      case K::Seq:
        rule = "seq";
        c.k.pop_back();
        c.k.push_back(item_instr(i.second));
        c.k.push_back(item_instr(i.first));
        break;
      case K::Create:
      case K::Forget:
        rule = i.kind == K::Create ? "create" : "forget";
        c.al = remove_prefixed(c.al, Path::of(i.name));
        c.k.pop_back();
        break;
      case K::Assign:
        rule = "assign";
        c.al = assign_effect(c.al, i.lhs, i.rhs, c.env(), p.class_table, opts.dot_depth);
        c.k.pop_back();
        break;
      case K::If:
        rule = "if-enter";
        c.bkt_te.push_back({c.al, {}});
        c.k.pop_back();
        c.k.push_back(item_end_then(i.second));
        c.k.push_back(item_instr(i.first));
        break;
      case K::Loop:
        rule = "loop-enter";
        c.bkt_l.push_back({c.al, i.first, {c.al}, c.qcall_depth});
        c.k.pop_back();
        c.k.push_back(item_loop_mark(i.first));
        c.k.push_back(item_instr(i.first));
        break;
      case K::Call: call_instr(i); break;
      case K::QualifiedCall: qcall_instr(i); break;
    }
  }

  void end_then(const KItem& top) {
    rule = "if-end-then";
    assert(!c.bkt_te.empty());
    auto& frame = c.bkt_te.back();
    frame.then_result = c.al;
    c.al = frame.original;
    InstrPtr else_branch = top.instr;
    c.k.pop_back();
    c.k.push_back(item_end_else());
    c.k.push_back(item_instr(else_branch));
  }

  void end_else() {
    rule = "if-end-else";
    assert(!c.bkt_te.empty());
    c.al = set_union(c.bkt_te.back().then_result, c.al);
    c.bkt_te.pop_back();
    c.k.pop_back();
  }

  void loop_mark(const KItem& top) {
    assert(!c.bkt_l.empty());
    auto& frame = c.bkt_l.back();
    if (clubs_enabled()) {
      if (auto m = lasso(frame.stored, c.al)) {
        rule = "loop-lasso";
        finish_loop(regularize(*m), frame);
        return;
      }
      // A revisited relation means the iterates cycle; their union is the
      // loop's limit.
      for (std::size_t i = 0; i + 1 < frame.iterates.size(); ++i) {
        if (frame.iterates[i] == c.al) {
          rule = "loop-fixpoint";
          AliasRelation limit = c.al;
          for (std::size_t j = i; j < frame.iterates.size(); ++j)
            limit = set_union(limit, frame.iterates[j]);
          finish_loop(std::move(limit), frame);
          return;
        }
      }
      if (auto widened =
              widen_iteration(frame.stored, c.al, c.env(), p.class_table, opts.dot_depth)) {
        rule = "loop-widen";
        finish_loop(std::move(*widened), frame);
        return;
      }
      rule = "loop-not-lasso";
    } else {
      rule = "loop-unfold";
    }
    frame.stored = c.al;
    frame.iterates.push_back(c.al);
    c.k.push_back(item_instr(top.instr));
  }

  void finish_loop(AliasRelation result, MachineConfig::LoopFrame& frame) {
    c.al = std::move(result);
    if (opts.union_iterates) c.al = fold_iterates(c.al, frame.iterates);
    c.bkt_l.pop_back();
    c.k.pop_back();
    ++c.lassos;
  }

  void call_instr(const Instruction& i) {
    const FunctionDef& fn = *p.function(i.name);
    auto& frames = c.bkt_cf[i.name];
    if (!frames.empty() && clubs_enabled()) {
      // Recursive re-entry: compare against the relation stored at the
      // previous entry of this function.
      if (auto m = lasso(frames.back().stored, c.al)) {
        rule = "call-lasso";
        finish_call(regularize(*m), frames);
        return;
      }
      for (std::size_t i2 = 0; i2 + 1 < frames.size(); ++i2) {
        if (frames[i2].stored == c.al) {
          rule = "call-fixpoint";
          AliasRelation limit = c.al;
          for (std::size_t j = i2; j < frames.size(); ++j)
            limit = set_union(limit, frames[j].stored);
          finish_call(std::move(limit), frames);
          return;
        }
      }
      if (auto widened = widen_iteration(frames.back().stored, c.al, c.env(),
                                         p.class_table, opts.dot_depth)) {
        rule = "call-widen";
        finish_call(std::move(*widened), frames);
        return;
      }
      rule = "call-not-lasso";
    } else {
      rule = "call-enter";
    }
    MachineConfig::CallFrame frame{c.al, i.actuals, c.call_log.size()};
    c.call_log.emplace_back(c.qcall_depth, c.al);
    frames.push_back(std::move(frame));
    c.al = substitute(c.al, i.actuals, fn.formal_paths());
    c.env_stack.push_back(callee_env(c.env(), p.class_table, fn, i.actuals));
    c.k.pop_back();
    c.k.push_back(item_call_mark(i.name));
    c.k.push_back(item_instr(fn.body));
  }

  // Replaces the relation, folds the pre-entry relations seen since this
  // function's first open frame (they are reachable intermediate states of
  // the recursion), and drops the call from the continuation. The frames
  // themselves stay; the pending return markers pop them.
  void finish_call(AliasRelation result, std::vector<MachineConfig::CallFrame>& frames) {
    c.al = std::move(result);
    if (opts.union_iterates) {
      std::vector<AliasRelation> since_first;
      for (std::size_t pos = frames.front().log_pos; pos < c.call_log.size(); ++pos)
        if (c.call_log[pos].first == c.qcall_depth)
          since_first.push_back(c.call_log[pos].second);
      c.al = fold_iterates(c.al, since_first);
    }
    c.k.pop_back();
    ++c.lassos;
  }

  void call_mark(const KItem& top) {
    rule = "call-exit";
    const FunctionDef& fn = *p.function(top.fname);
    auto& frames = c.bkt_cf[top.fname];
    assert(!frames.empty());
    c.al = substitute(c.al, fn.formal_paths(), frames.back().actuals);
    frames.pop_back();
    c.env_stack.pop_back();
    c.k.pop_back();
  }

  void qcall_instr(const Instruction& i) {
    rule = "qcall-enter";
    Path receiver = normalize(i.lhs);
    Path neg = negate(receiver);
    c.al = distribute_prefix(neg, c.al);
    c.bkt_qf[i.name].push_back(receiver);
    ++c.qcall_depth;
    std::vector<Path> transposed;
    for (const Path& a : i.actuals) transposed.push_back(concat(neg, a));
    c.k.pop_back();
    c.k.push_back(item_qcall_mark(i.name));
    c.k.push_back(item_instr(make_call(i.name, std::move(transposed), i.span)));
  }

  void qcall_mark(const KItem& top) {
    rule = "qcall-exit";
    auto& stack = c.bkt_qf[top.fname];
    assert(!stack.empty());
    c.al = distribute_prefix(stack.back(), c.al);
    stack.pop_back();
    --c.qcall_depth;
    c.k.pop_back();
  }
};

AliasRelation drop_negative_pairs(const AliasRelation& r) {
  std::set<AliasPair> out;
  for (const auto& p : r.pairs())
    if (!p.lhs.has_negative() && !p.rhs.has_negative()) out.insert(p);
  return AliasRelation(std::move(out));
}

}  // namespace

MachineConfig init(const Program& p, const AnalysisOptions&) {
  if (!validate(p).empty()) throw std::invalid_argument("program does not validate");
  MachineConfig c;
  c.k.push_back(item_instr(p.main));
  c.env_stack.push_back(p.entry_env);
  return c;
}

void step(MachineConfig& c, const Program& p, const AnalysisOptions& opts,
          std::vector<TraceEntry>* trace) {
  if (c.k.empty()) throw std::logic_error("step on an empty continuation");
  Stepper s{c, p, opts};
  s.dispatch();
  ++c.steps;
  if (trace)
    trace->push_back(
        {c.steps, s.rule, c.al.render(), k_top_render(c), backtracking_render(c)});
}

Report run(const Program& p, const AnalysisOptions& opts) {
  MachineConfig c = init(p, opts);
  Report rep;
  rep.trace_enabled = opts.trace;

  const long budget =
      opts.mode == AnalysisOptions::Mode::CutAtL ? opts.cut_steps : opts.max_steps;
  while (!c.done() && c.steps < budget)
    step(c, p, opts, opts.trace ? &rep.trace : nullptr);

  rep.steps = c.steps;
  rep.lassos = c.lassos;
  if (c.done()) {
    rep.halted = Report::Halt::Converged;
    rep.final_relation = c.al;
    assert(!rep.final_relation.has_negative());
    assert(c.bkt_te.empty() && c.bkt_l.empty());
  } else {
    rep.halted = Report::Halt::StepBudgetExhausted;
    AliasRelation final = c.qcall_depth == 0 ? c.al : drop_negative_pairs(c.al);
    if (opts.union_iterates) {
      for (const auto& frame : c.bkt_l)
        if (frame.qdepth == 0) final = fold_iterates(std::move(final), frame.iterates);
      for (const auto& [depth, rel] : c.call_log)
        if (depth == 0) final = absorb_union(std::move(final), rel);
    }
    rep.final_relation = std::move(final);
  }
  return rep;
}

std::string render_trace(const Report& rep) {
  if (!rep.trace_enabled) return "trace not recorded\n";
  std::ostringstream os;
  for (const auto& e : rep.trace) {
    os << "step " << e.step << "  (" << e.rule << ")\n";
    os << "  al:  " << e.al << "\n";
    os << "  k:   " << e.k_top << "\n";
    os << "  bkt: " << e.backtracking << "\n";
  }
  if (rep.halted == Report::Halt::StepBudgetExhausted)
    os << "-- truncated: step budget exhausted after " << rep.steps << " steps --\n";
  return os.str();
}

}  // namespace aliascalc
