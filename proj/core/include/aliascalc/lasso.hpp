#pragma once

#include <optional>
#include <vector>

#include "aliascalc/relation.hpp"

namespace aliascalc {

/// A split e = x . y . z of one side of a pair; `y` is the part that gets
/// repeated when the pair grows under iteration.
struct Decomposition {
  Path x, y, z;
};

/// All splits of `e`, ordered by |x| then |y|.
std::vector<Decomposition> decompositions(const Path& e);

/// One matched pair of a lasso: the base pair, the pumped pair it maps to,
/// and the split chosen for each side (the first valid one in
/// decomposition order).
struct MatchedPair {
  Path from_lhs, from_rhs;  // base pair, oriented to the target pair
  Path to_lhs, to_rhs;
  Decomposition lhs_split, rhs_split;
};

struct Matching {
  std::vector<MatchedPair> entries;
};

/// Detects whether `rp` grows out of `r` by repeating, in every pair, a tail
/// of a prefix of each side once: a one-to-one correspondence pairing each
/// [e1,e2] in r with [x1 y1 y1 z1, x2 y2 y2 z2] in rp where e_i = x_i y_i z_i.
/// The search is deterministic: pairs of r in canonical order, candidates of
/// rp in canonical order, unswapped orientation before swapped, first valid
/// decomposition per side.
///
/// Identical relations always match (every y empty). For relations that
/// already contain star groups the pumped part is still required to be a
/// plain positive atom run, so the star bodies built from it stay flat.
std::optional<Matching> lasso(const AliasRelation& r, const AliasRelation& rp);

/// Relaxed variant for relations that grow without keeping their pair count
/// (a loop body that only sometimes extends a chain unions old and new
/// pairs, so no bijection exists). Requires every pair of r to pump into
/// some pair of rp, and returns one entry per rp pair that is itself a pump
/// of some r pair. Pairs of rp with no pump base are left unmatched; the
/// caller decides whether they are reachable some other way (the machine
/// accepts them when they re-derive by dot-completion from the starred
/// matching). Nothing is returned when r lost pairs or nothing pumps.
std::optional<Matching> cover_lasso(const AliasRelation& r, const AliasRelation& rp);

/// The regular over-approximation of a detected lasso: each nonempty pumped
/// part is replaced by a star group, empty ones drop out, and pairs whose
/// sides collapse to the same pattern are omitted.
AliasRelation regularize(const Matching& m);

}  // namespace aliascalc
