#include "aliascalc/dotcomplete.hpp"

#include <algorithm>
#include <vector>

namespace aliascalc {

std::size_t longest_expression(const AliasRelation& r) {
  std::size_t n = 0;
  for (const auto& p : r.pairs()) n = std::max({n, p.lhs.size(), p.rhs.size()});
  return n;
}

namespace {

// Last segment of `w` as a positive atom, with everything before it equal to
// `t`; i.e. w = t.a for a single attribute a.
const std::string* extends_by_one_atom(const Path& t, const Path& w) {
  if (w.size() != t.size() + 1) return nullptr;
  if (!w.starts_with(t)) return nullptr;
  const Segment& last = w.segments().back();
  if (!last.is_atom() || last.negative) return nullptr;
  return &last.name;
}

}  // namespace

AliasRelation dot_complete_capped(const AliasRelation& r, const VarEnv& env,
                                  const ClassTable& ct, std::size_t cap) {
  // Worklist closure. Pairs are indexed by their sides so each rule-1
  // premise combination is found directly instead of by rescanning:
  //   by_side[e]   -> pairs with a side equal to e (as (e, partner))
  //   by_parent[e] -> pairs with a side e.a (as (e.a's last atom, partner))
  struct SideEntry {
    const AliasPair* owner;
    const Path* partner;
  };
  struct ParentEntry {
    const AliasPair* owner;
    std::string atom;
    const Path* partner;
  };
  std::set<AliasPair> pairs;
  std::map<Path, std::vector<SideEntry>> by_side;
  std::map<Path, std::vector<ParentEntry>> by_parent;
  std::vector<const AliasPair*> worklist;

  auto index_pair = [&](const AliasPair& stored) {
    const Path* sides[2][2] = {{&stored.lhs, &stored.rhs}, {&stored.rhs, &stored.lhs}};
    for (auto& s : sides) {
      const Path& e = *s[0];
      const Path& partner = *s[1];
      by_side[e].push_back({&stored, &partner});
      if (!e.empty() && e.segments().back().is_atom() && !e.segments().back().negative)
        by_parent[e.slice(0, e.size() - 1)].push_back(
            {&stored, e.segments().back().name, &partner});
    }
  };

  auto try_insert = [&](const Path& a, const Path& b) {
    if (a.size() > cap || b.size() > cap) return;
    auto p = make_pair(a, b);
    if (!p) return;
    auto [it, added] = pairs.insert(std::move(*p));
    if (!added) return;
    index_pair(*it);
    worklist.push_back(&*it);
  };

  for (const AliasPair& p : r.pairs()) try_insert(p.lhs, p.rhs);

  while (!worklist.empty()) {
    const AliasPair* p = worklist.back();
    worklist.pop_back();
    const Path* sides[2][2] = {{&p->lhs, &p->rhs}, {&p->rhs, &p->lhs}};
    for (auto& side : sides) {
      const Path t = *side[0];
      const Path u = *side[1];
      // Rule (2): one extra step along every attribute of t's class.
      for (const std::string& a : attribute_domain(env, ct, t))
        try_insert(t.append_atom(a), u.append_atom(a));
      // Rule (1), this pair as [t,u]: a distinct pair [t.a, v] gives
      // [u.a, v]. Buckets may grow while inserting, hence index loops.
      if (auto it = by_parent.find(t); it != by_parent.end()) {
        for (std::size_t i = 0; i < it->second.size(); ++i) {
          ParentEntry e = it->second[i];
          if (e.owner == p) continue;
          try_insert(u.append_atom(e.atom), *e.partner);
        }
      }
      // Rule (1), this pair as [t'.a, v]: distinct pairs [t', u'] give
      // [u'.a, v].
      if (!t.empty() && t.segments().back().is_atom() && !t.segments().back().negative) {
        Path parent = t.slice(0, t.size() - 1);
        const std::string& a = t.segments().back().name;
        if (auto it = by_side.find(parent); it != by_side.end()) {
          for (std::size_t i = 0; i < it->second.size(); ++i) {
            SideEntry e = it->second[i];
            if (e.owner == p) continue;
            try_insert(e.partner->append_atom(a), u);
          }
        }
      }
    }
  }
  return AliasRelation(std::move(pairs));
}

AliasRelation dot_complete(const AliasRelation& r, const VarEnv& env,
                           const ClassTable& ct, std::size_t depth) {
  return dot_complete_capped(r, env, ct, longest_expression(r) + depth);
}

AliasRelation augment(const AliasRelation& r, const Path& x, const std::set<Path>& u,
                      const VarEnv& env, const ClassTable& ct, std::size_t depth) {
  AliasRelation base = r;
  for (const Path& y : u) base.insert(x, y);
  return dot_complete(base, env, ct, depth);
}

AliasRelation assign_effect(const AliasRelation& r, const Path& t, const Path& s,
                            const VarEnv& env, const ClassTable& ct,
                            std::size_t depth) {
  const Path nt = normalize(t);
  const Path ns = normalize(s);

  std::set<Path> partners = aliased_to(r, ns);
  partners.erase(ns);

  std::set<Path> seeds = partners;
  // s itself still names the assigned object afterwards unless the
  // assignment rewrote its own root; in that case its old partners carry
  // the information instead. With no partners we keep s: the pair [t,s] is
  // then the only record of the binding.
  if (!(ns.starts_with(nt) && !partners.empty())) seeds.insert(ns);
  seeds.erase(nt);

  return augment(remove_prefixed(r, nt), nt, seeds, env, ct, depth);
}

}  // namespace aliascalc
