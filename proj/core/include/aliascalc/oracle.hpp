#pragma once

#include <vector>

#include "aliascalc/ast.hpp"
#include "aliascalc/relation.hpp"

namespace aliascalc {

/// Bounds for the direct evaluator. Loops are unions over 0..loop_unroll
/// runs of the body; a call whose nesting depth reaches recursion_depth is
/// not entered and leaves the relation unchanged (so truncation can only
/// lose pairs, never invent them).
struct OracleBudget {
  int loop_unroll = 5;
  int recursion_depth = 5;
  std::size_t dot_depth = 1;
};

struct OracleResult {
  AliasRelation relation;
  bool budget_hit = false;  // some loop or call was truncated by the budget
};

/// Evaluates the effect of `i` on `r` directly from the per-construct
/// equations: sequencing composes, both branches of a conditional are
/// unioned, loops union their bounded unfoldings, create/forget drop the
/// prefixed pairs, assignment and calls share the exact kernel the machine
/// uses. Never produces star segments.
OracleResult eval(const AliasRelation& r, const Instruction& i, const Program& p,
                  const VarEnv& env, const OracleBudget& b);

/// Convenience: eval of the program's main against the empty relation.
OracleResult eval_program(const Program& p, const OracleBudget& b);

/// n-fold application of `i` (r, r>>i, r>>i^2, ... taken to exactly n).
AliasRelation unfold_pow(const AliasRelation& r, const Instruction& i, int n,
                         const Program& p, const VarEnv& env, const OracleBudget& b);

/// Every pair the oracle can derive within the budget must be matched by the
/// engine's relation; returns the pairs that are not. Sweeps joint budgets
/// (n, min(n, recursion_depth)) for n = 0..loop_unroll so that shallow
/// unfoldings are checked as well as deep ones.
std::vector<AliasPair> check_soundness(const Program& p, const OracleBudget& b,
                                       const AliasRelation& engine_result);

}  // namespace aliascalc
