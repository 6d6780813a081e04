#include "aliascalc/oracle.hpp"

#include <algorithm>
#include <cassert>
#include <set>

#include "aliascalc/dotcomplete.hpp"

namespace aliascalc {

namespace {

struct Evaluator {
  const Program& p;
  const OracleBudget& b;
  bool budget_hit = false;

  AliasRelation eval(AliasRelation r, const Instruction& i, const VarEnv& env,
                     int call_depth) {
    using K = Instruction::Kind;
    switch (i.kind) {
      case K::Skip:
        return r;
      case K::Seq:
        return eval(eval(std::move(r), *i.first, env, call_depth), *i.second, env,
                    call_depth);
      case K::If: {
        AliasRelation then_r = eval(r, *i.first, env, call_depth);
        AliasRelation else_r = eval(r, *i.second, env, call_depth);
        return set_union(then_r, else_r);
      }
      case K::Create:
      case K::Forget:
        return remove_prefixed(r, Path::of(i.name));
      case K::Assign:
        return assign_effect(r, i.lhs, i.rhs, env, p.class_table, b.dot_depth);
      case K::Loop: {
        AliasRelation acc = r;
        AliasRelation cur = r;
        for (int n = 1; n <= b.loop_unroll; ++n) {
          AliasRelation next = eval(cur, *i.first, env, call_depth);
          if (next == cur) return acc;  // stabilized below the bound
          cur = std::move(next);
          acc = set_union(acc, cur);
        }
        budget_hit = true;
        return acc;
      }
      case K::Call:
        return eval_call(std::move(r), i.name, i.actuals, env, call_depth);
      case K::QualifiedCall: {
        Path receiver = normalize(i.lhs);
        Path neg = negate(receiver);
        std::vector<Path> transposed;
        for (const Path& a : i.actuals) transposed.push_back(concat(neg, a));
        AliasRelation inner = eval_call(distribute_prefix(neg, r), i.name, transposed,
                                        env, call_depth);
        return distribute_prefix(receiver, inner);
      }
    }
    return r;
  }

  AliasRelation eval_call(AliasRelation r, const std::string& fname,
                          const std::vector<Path>& actuals, const VarEnv& env,
                          int call_depth) {
    if (call_depth + 1 >= b.recursion_depth) {
      // Too deep: the call contributes its input unchanged.
      budget_hit = true;
      return r;
    }
    const FunctionDef& fn = *p.function(fname);
    AliasRelation inner = substitute(r, actuals, fn.formal_paths());
    VarEnv body_env = callee_env(env, p.class_table, fn, actuals);
    inner = eval(std::move(inner), *fn.body, body_env, call_depth + 1);
    return substitute(inner, fn.formal_paths(), actuals);
  }
};

}  // namespace

OracleResult eval(const AliasRelation& r, const Instruction& i, const Program& p,
                  const VarEnv& env, const OracleBudget& b) {
  Evaluator ev{p, b};
  OracleResult out;
  out.relation = ev.eval(r, i, env, 0);
  out.budget_hit = ev.budget_hit;
  assert(!out.relation.has_star());
  return out;
}

OracleResult eval_program(const Program& p, const OracleBudget& b) {
  OracleResult out = eval(AliasRelation{}, *p.main, p, p.entry_env, b);
  assert(!out.relation.has_negative());
  return out;
}

AliasRelation unfold_pow(const AliasRelation& r, const Instruction& i, int n,
                         const Program& p, const VarEnv& env, const OracleBudget& b) {
  AliasRelation cur = r;
  for (int k = 0; k < n; ++k) {
    Evaluator ev{p, b};
    cur = ev.eval(std::move(cur), i, env, 0);
  }
  return cur;
}

std::vector<AliasPair> check_soundness(const Program& p, const OracleBudget& b,
                                       const AliasRelation& engine_result) {
  std::vector<AliasRelation> oracle_runs;
  std::size_t oracle_longest = 0;
  for (int n = 0; n <= b.loop_unroll; ++n) {
    OracleBudget bn{n, std::min(n, b.recursion_depth), b.dot_depth};
    OracleResult res = eval_program(p, bn);
    oracle_longest = std::max(oracle_longest, longest_expression(res.relation));
    oracle_runs.push_back(std::move(res.relation));
  }

  // The engine's relation stands for its completion; judge against the
  // completion materialized out to the lengths the evaluator reached.
  AliasRelation closed = dot_complete_capped(
      engine_result, p.entry_env, p.class_table,
      std::max(oracle_longest, longest_expression(engine_result)) + b.dot_depth);

  std::vector<AliasPair> out;
  std::set<AliasPair> seen;
  for (const AliasRelation& rel : oracle_runs) {
    for (const AliasPair& pair : rel.pairs()) {
      if (!may_alias(closed, pair.lhs, pair.rhs) && seen.insert(pair).second)
        out.push_back(pair);
    }
  }
  return out;
}

}  // namespace aliascalc
