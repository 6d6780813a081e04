#include "aliascalc/relation.hpp"

#include <stdexcept>

namespace aliascalc {

std::optional<AliasPair> make_pair(const Path& a, const Path& b) {
  Path na = normalize(a);
  Path nb = normalize(b);
  auto c = compare(na, nb);
  if (c == 0) return std::nullopt;
  if (c < 0) return AliasPair{std::move(na), std::move(nb)};
  return AliasPair{std::move(nb), std::move(na)};
}

std::string render(const AliasPair& p) {
  return "[" + p.lhs.render() + ", " + p.rhs.render() + "]";
}

AliasRelation AliasRelation::of(
    const std::vector<std::pair<std::string, std::string>>& pairs) {
  AliasRelation r;
  for (const auto& [a, b] : pairs) r.insert(Path::of(a), Path::of(b));
  return r;
}

void AliasRelation::insert(const Path& a, const Path& b) {
  if (auto p = make_pair(a, b)) pairs_.insert(std::move(*p));
}

bool AliasRelation::has_star() const {
  for (const auto& p : pairs_)
    if (p.lhs.has_star() || p.rhs.has_star()) return true;
  return false;
}

bool AliasRelation::has_negative() const {
  for (const auto& p : pairs_)
    if (p.lhs.has_negative() || p.rhs.has_negative()) return true;
  return false;
}

std::string AliasRelation::render() const {
  std::string out = "{";
  bool first = true;
  for (const auto& p : pairs_) {
    if (!first) out += ", ";
    first = false;
    out += aliascalc::render(p);
  }
  out += "}";
  return out;
}

std::set<Path> aliased_to(const AliasRelation& r, const Path& e) {
  std::set<Path> out;
  out.insert(normalize(e));
  const Path ne = normalize(e);
  for (const auto& p : r.pairs()) {
    if (p.lhs == ne) out.insert(p.rhs);
    if (p.rhs == ne) out.insert(p.lhs);
  }
  return out;
}

AliasRelation remove_prefixed(const AliasRelation& r, const Path& x) {
  std::set<AliasPair> out;
  for (const auto& p : r.pairs())
    if (!p.lhs.starts_with(x) && !p.rhs.starts_with(x)) out.insert(p);
  return AliasRelation(std::move(out));
}

AliasRelation set_union(const AliasRelation& a, const AliasRelation& b) {
  std::set<AliasPair> out = a.pairs();
  out.insert(b.pairs().begin(), b.pairs().end());
  return AliasRelation(std::move(out));
}

namespace {

Path substitute_path(const Path& e, const std::vector<Path>& from,
                     const std::vector<Path>& to) {
  int best = -1;
  std::size_t best_len = 0;
  for (std::size_t i = 0; i < from.size(); ++i) {
    if (e.starts_with(from[i]) && (best < 0 || from[i].size() > best_len)) {
      best = static_cast<int>(i);
      best_len = from[i].size();
    }
  }
  if (best < 0) return e;
  return concat(to[best], e.slice(best_len, e.size()));
}

}  // namespace

AliasRelation substitute(const AliasRelation& r, const std::vector<Path>& from,
                         const std::vector<Path>& to) {
  if (from.size() != to.size())
    throw std::invalid_argument("substitute: from/to length mismatch");
  AliasRelation out;
  for (const auto& p : r.pairs())
    out.insert(substitute_path(p.lhs, from, to), substitute_path(p.rhs, from, to));
  return out;
}

AliasRelation distribute_prefix(const Path& x, const AliasRelation& r) {
  AliasRelation out;
  for (const auto& p : r.pairs()) out.insert(concat(x, p.lhs), concat(x, p.rhs));
  return out;
}

namespace {

// Aliasing propagates through attribute access: if t and u may reference the
// same object then t.a and u.a do as well. A pair therefore witnesses every
// extension of its two sides by a common attribute suffix, and the judgment
// peels such suffixes off before matching instead of expecting the relation
// to materialize them.
std::vector<std::pair<Path, Path>> common_suffix_strips(const Path& a, const Path& b) {
  std::vector<std::pair<Path, Path>> out;
  std::size_t k = 0;
  while (true) {
    Path pa = a.slice(0, a.size() - k);
    Path pb = b.slice(0, b.size() - k);
    bool equal = pa == pb;
    if (!equal) out.emplace_back(pa, pb);
    if (equal || pa.empty() || pb.empty()) break;
    const Segment& sa = pa.segments().back();
    const Segment& sb = pb.segments().back();
    if (!(sa == sb) || !sa.is_atom() || sa.negative) break;
    ++k;
  }
  return out;
}

}  // namespace

std::optional<AliasPair> may_alias_witness(const AliasRelation& r, const Path& e1,
                                           const Path& e2) {
  Path a = normalize(e1), b = normalize(e2);
  if (a == b) return std::nullopt;
  for (const auto& [pa, pb] : common_suffix_strips(a, b)) {
    for (const auto& p : r.pairs()) {
      if ((matches(p.lhs, pa) && matches(p.rhs, pb)) ||
          (matches(p.lhs, pb) && matches(p.rhs, pa)))
        return p;
    }
  }
  return std::nullopt;
}

bool may_alias(const AliasRelation& r, const Path& e1, const Path& e2) {
  return may_alias_witness(r, e1, e2).has_value();
}

bool pair_subsumed(const AliasRelation& r, const AliasPair& p) {
  for (const auto& [pa, pb] : common_suffix_strips(p.lhs, p.rhs)) {
    for (const auto& q : r.pairs()) {
      if ((covers(q.lhs, pa) && covers(q.rhs, pb)) ||
          (covers(q.lhs, pb) && covers(q.rhs, pa)))
        return true;
    }
  }
  return false;
}

AliasRelation absorb_union(AliasRelation r, const AliasRelation& extra) {
  std::set<AliasPair> pairs = r.pairs();
  for (const auto& p : extra.pairs()) {
    if (!pair_subsumed(r, p)) pairs.insert(p);
  }
  return AliasRelation(std::move(pairs));
}

}  // namespace aliascalc
