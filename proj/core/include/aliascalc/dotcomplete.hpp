#pragma once

#include <cstddef>
#include <set>

#include "aliascalc/relation.hpp"
#include "aliascalc/types.hpp"

namespace aliascalc {

/// Least relation containing `r` and closed under the two completion rules,
/// with every expression kept at or below `cap` segments:
///
///   (1) [t,u] and [t.a,v] distinct pairs  =>  [u.a, v]
///   (2) [t,u] and a in the domain of t    =>  [t.a, u.a]
///
/// Rule (1) deliberately requires its two premises to be distinct pairs;
/// feeding the same pair in both positions would alias an expression with
/// its own extension and none of the reference derivations do that.
/// Saturating under a fixed cap makes this a closure operator: applying it
/// twice with the same cap changes nothing.
AliasRelation dot_complete_capped(const AliasRelation& r, const VarEnv& env,
                                  const ClassTable& ct, std::size_t cap);

/// Longest expression length in `r`, in segments. Zero for the empty
/// relation.
std::size_t longest_expression(const AliasRelation& r);

/// dot_complete_capped with cap = longest_expression(r) + depth: completion
/// may grow expressions by at most `depth` extra steps past the longest one
/// already present.
AliasRelation dot_complete(const AliasRelation& r, const VarEnv& env,
                           const ClassTable& ct, std::size_t depth);

/// r plus the pairs [x,y] for y in u (minus reflexive ones), dot-completed.
AliasRelation augment(const AliasRelation& r, const Path& x, const std::set<Path>& u,
                      const VarEnv& env, const ClassTable& ct, std::size_t depth);

/// The assignment t := s. The aliases of t are rebuilt from what s was
/// aliased to before the assignment: every old partner of s seeds a pair
/// [t, partner], and s itself also seeds one unless it is invalidated by
/// the assignment (t is a prefix of s) while partners exist to stand in
/// for it. The t-pairs of the old relation are dropped, the seeds added,
/// and the result dot-completed.
AliasRelation assign_effect(const AliasRelation& r, const Path& t, const Path& s,
                            const VarEnv& env, const ClassTable& ct,
                            std::size_t depth);

}  // namespace aliascalc
