#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "aliascalc/path.hpp"

namespace aliascalc {

/// Unordered pair of distinct alias expressions, stored with the smaller
/// side first so set semantics and rendering are canonical.
struct AliasPair {
  Path lhs, rhs;

  friend bool operator==(const AliasPair&, const AliasPair&) = default;
  friend bool operator<(const AliasPair& a, const AliasPair& b) {
    if (auto c = compare(a.lhs, b.lhs); c != 0) return c < 0;
    return compare(a.rhs, b.rhs) < 0;
  }
};

/// Builds the canonical pair, or nothing if the two sides are equal
/// (relations are irreflexive).
std::optional<AliasPair> make_pair(const Path& a, const Path& b);

std::string render(const AliasPair& p);

/// A finite, symmetric, irreflexive set of expression pairs: the state of
/// the analysis. Symmetry is implicit in the unordered-pair representation.
class AliasRelation {
 public:
  AliasRelation() = default;
  explicit AliasRelation(std::set<AliasPair> pairs) : pairs_(std::move(pairs)) {}

  /// Convenience constructor from "lhs|rhs" dotted strings, e.g.
  /// {{"x", "x.a"}, {"x.a", "x.a.a"}}. Reflexive entries are dropped.
  static AliasRelation of(const std::vector<std::pair<std::string, std::string>>& pairs);

  const std::set<AliasPair>& pairs() const { return pairs_; }
  bool empty() const { return pairs_.empty(); }
  std::size_t size() const { return pairs_.size(); }
  bool contains(const AliasPair& p) const { return pairs_.count(p) > 0; }

  /// Inserts normalized, canonicalized; reflexive pairs are ignored.
  void insert(const Path& a, const Path& b);

  bool has_star() const;
  bool has_negative() const;

  /// `{lhs, rhs, ...}` in canonical order; the rendering used by reports,
  /// traces and goldens.
  std::string render() const;

  friend bool operator==(const AliasRelation&, const AliasRelation&) = default;

 private:
  std::set<AliasPair> pairs_;
};

/// All expressions aliased to `e`, plus `e` itself (matching on exact paths,
/// not on star patterns).
std::set<Path> aliased_to(const AliasRelation& r, const Path& e);

/// Drops every pair in which either side has `x` as a leading segment
/// sequence (including `x` itself). This is the effect of creating or
/// forgetting `x`.
AliasRelation remove_prefixed(const AliasRelation& r, const Path& x);

AliasRelation set_union(const AliasRelation& a, const AliasRelation& b);

/// Rewrites every expression whose longest matching head prefix equals some
/// `from[i]` to start with `to[i]` instead. Pairs that become reflexive are
/// dropped. Throws std::invalid_argument on length mismatch.
AliasRelation substitute(const AliasRelation& r, const std::vector<Path>& from,
                         const std::vector<Path>& to);

/// Prefixes every expression with `x` and re-normalizes, so distributing a
/// receiver over a callee-context relation cancels its negative markers.
AliasRelation distribute_prefix(const Path& x, const AliasRelation& r);

/// The may-alias judgment over a relation that can contain star patterns:
/// false on identical expressions, otherwise true iff some pair matches
/// e1/e2 (either way around). Returns the witnessing pair.
std::optional<AliasPair> may_alias_witness(const AliasRelation& r, const Path& e1,
                                           const Path& e2);
bool may_alias(const AliasRelation& r, const Path& e1, const Path& e2);

/// True if the concrete pair is an instance of some pair already in `r`.
bool pair_subsumed(const AliasRelation& r, const AliasPair& p);

/// r plus those pairs of `extra` that are not already instances of pairs in
/// the result. Keeps reports free of pairs a star pattern already covers.
AliasRelation absorb_union(AliasRelation r, const AliasRelation& extra);

}  // namespace aliascalc
