#include "aliascalc/lasso.hpp"

#include <algorithm>

namespace aliascalc {

std::vector<Decomposition> decompositions(const Path& e) {
  std::vector<Decomposition> out;
  const std::size_t n = e.size();
  for (std::size_t i = 0; i <= n; ++i)
    for (std::size_t j = 0; i + j <= n; ++j)
      out.push_back({e.slice(0, i), e.slice(i, i + j), e.slice(i + j, n)});
  return out;
}

namespace {

bool pumpable_part(const Path& y) {
  for (const Segment& s : y.segments())
    if (!s.is_atom() || s.negative) return false;
  return true;
}

// First decomposition (x,y,z) of `e` with x.y.y.z == to, in (|x|,|y|) order.
std::optional<Decomposition> first_pump(const Path& e, const Path& to) {
  for (const Decomposition& d : decompositions(e)) {
    if (!pumpable_part(d.y)) continue;
    Path pumped = concat(concat(d.x, d.y), concat(d.y, d.z));
    if (pumped == to) return d;
  }
  return std::nullopt;
}

struct Searcher {
  std::vector<AliasPair> base;
  std::vector<AliasPair> target;
  std::vector<bool> used;
  std::vector<MatchedPair> entries;

  bool solve(std::size_t i) {
    if (i == base.size()) return true;
    const AliasPair& p = base[i];
    for (std::size_t j = 0; j < target.size(); ++j) {
      if (used[j]) continue;
      const AliasPair& q = target[j];
      for (bool swapped : {false, true}) {
        const Path& a1 = swapped ? p.rhs : p.lhs;
        const Path& a2 = swapped ? p.lhs : p.rhs;
        auto d1 = first_pump(a1, q.lhs);
        if (!d1) continue;
        auto d2 = first_pump(a2, q.rhs);
        if (!d2) continue;
        used[j] = true;
        entries.push_back({a1, a2, q.lhs, q.rhs, *d1, *d2});
        if (solve(i + 1)) return true;
        entries.pop_back();
        used[j] = false;
      }
    }
    return false;
  }
};

}  // namespace

std::optional<Matching> lasso(const AliasRelation& r, const AliasRelation& rp) {
  if (r.size() != rp.size()) return std::nullopt;

  Searcher s;
  s.base.assign(r.pairs().begin(), r.pairs().end());
  s.target.assign(rp.pairs().begin(), rp.pairs().end());
  s.used.assign(s.target.size(), false);
  if (!s.solve(0)) return std::nullopt;
  return Matching{std::move(s.entries)};
}

namespace {

// First base pair of r (canonical order, unswapped before swapped) whose two
// sides pump into the sides of q.
std::optional<MatchedPair> first_base_for(const AliasRelation& r, const AliasPair& q) {
  for (const AliasPair& p : r.pairs()) {
    for (bool swapped : {false, true}) {
      const Path& a1 = swapped ? p.rhs : p.lhs;
      const Path& a2 = swapped ? p.lhs : p.rhs;
      auto d1 = first_pump(a1, q.lhs);
      if (!d1) continue;
      auto d2 = first_pump(a2, q.rhs);
      if (!d2) continue;
      return MatchedPair{a1, a2, q.lhs, q.rhs, *d1, *d2};
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<Matching> cover_lasso(const AliasRelation& r, const AliasRelation& rp) {
  if (r.empty() || rp.empty()) return std::nullopt;

  // Every pair of the base must still be represented in the extension.
  auto pumps_into_rp = [&](const AliasPair& p) {
    for (const AliasPair& q : rp.pairs()) {
      for (bool swapped : {false, true}) {
        const Path& a1 = swapped ? p.rhs : p.lhs;
        const Path& a2 = swapped ? p.lhs : p.rhs;
        if (first_pump(a1, q.lhs) && first_pump(a2, q.rhs)) return true;
      }
    }
    return false;
  };
  for (const AliasPair& p : r.pairs())
    if (!pumps_into_rp(p)) return std::nullopt;

  Matching m;
  for (const AliasPair& q : rp.pairs())
    if (auto entry = first_base_for(r, q)) m.entries.push_back(std::move(*entry));
  if (m.entries.empty()) return std::nullopt;
  return m;
}

namespace {

Path star_side(const Path& whole, const Decomposition& d) {
  if (d.y.empty()) return whole;
  std::vector<std::string> body;
  for (const Segment& seg : d.y.segments()) body.push_back(seg.name);
  std::vector<Segment> segs = d.x.segments();
  segs.push_back(Segment::star(std::move(body)));
  segs.insert(segs.end(), d.z.segments().begin(), d.z.segments().end());
  return normalize(Path(std::move(segs)));
}

}  // namespace

AliasRelation regularize(const Matching& m) {
  AliasRelation out;
  for (const MatchedPair& e : m.entries)
    out.insert(star_side(e.from_lhs, e.lhs_split), star_side(e.from_rhs, e.rhs_split));
  return out;
}

}  // namespace aliascalc
