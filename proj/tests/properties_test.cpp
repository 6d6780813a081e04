#include <gtest/gtest.h>

#include <random>

#include "aliascalc/dotcomplete.hpp"
#include "aliascalc/lasso.hpp"
#include "support/corpus.hpp"

namespace aliascalc {
namespace {

// Every relation an operation returns must be canonically stored: ordered
// sides, no reflexive pairs.
void expect_canonical(const AliasRelation& r) {
  for (const auto& p : r.pairs()) {
    EXPECT_TRUE(compare(p.lhs, p.rhs) < 0) << render(p);
    EXPECT_EQ(normalize(p.lhs), p.lhs);
    EXPECT_EQ(normalize(p.rhs), p.rhs);
  }
}

struct RandomRelations : ::testing::Test {
  std::mt19937_64 rng{20250811};
  VarEnv env;
  ClassTable ct;

  AliasRelation next() { return corpus::random_relation(rng, env, ct); }
  Path random_path() {
    VarEnv e;
    ClassTable t;
    auto r = corpus::random_relation(rng, e, t);
    if (r.empty()) return Path::of("x");
    return r.pairs().begin()->rhs;
  }
};

TEST_F(RandomRelations, OperationsPreserveCanonicalForm) {
  for (int i = 0; i < 200; ++i) {
    AliasRelation r = next();
    Path x = random_path();
    expect_canonical(r);
    expect_canonical(remove_prefixed(r, x));
    expect_canonical(set_union(r, next()));
    expect_canonical(dot_complete(r, env, ct, 1));
    expect_canonical(distribute_prefix(Path::of("x"), r));
    expect_canonical(substitute(r, {Path::of("x")}, {Path::of("y.a")}));
    expect_canonical(assign_effect(r, Path::of("x"), Path::of("y"), env, ct, 1));
  }
}

TEST_F(RandomRelations, RemovePrefixedIdempotent) {
  for (int i = 0; i < 200; ++i) {
    AliasRelation r = next();
    Path x = Path::of("x");
    auto once = remove_prefixed(r, x);
    EXPECT_EQ(remove_prefixed(once, x), once);
  }
}

TEST_F(RandomRelations, AliasedToContainsTheExpression) {
  for (int i = 0; i < 200; ++i) {
    AliasRelation r = next();
    Path e = random_path();
    EXPECT_TRUE(aliased_to(r, e).count(normalize(e)));
  }
}

TEST_F(RandomRelations, DotCompleteIdempotentAtFixedCap) {
  for (int i = 0; i < 200; ++i) {
    AliasRelation r = next();
    std::size_t cap = longest_expression(r) + 1;
    auto once = dot_complete_capped(r, env, ct, cap);
    EXPECT_EQ(dot_complete_capped(once, env, ct, cap), once);
  }
}

TEST_F(RandomRelations, UnionLaws) {
  for (int i = 0; i < 200; ++i) {
    AliasRelation a = next(), b = next(), c = next();
    EXPECT_EQ(set_union(a, b), set_union(b, a));
    EXPECT_EQ(set_union(set_union(a, b), c), set_union(a, set_union(b, c)));
    EXPECT_EQ(set_union(a, a), a);
  }
}

TEST_F(RandomRelations, NormalizeIdempotentAndNonLengthening) {
  std::vector<std::string> names = {"a", "b", "x"};
  for (int i = 0; i < 300; ++i) {
    std::vector<Segment> segs;
    int n = static_cast<int>(rng() % 6);
    for (int j = 0; j < n; ++j) {
      const std::string& name = names[rng() % names.size()];
      switch (rng() % 3) {
        case 0: segs.push_back(Segment::atom(name)); break;
        case 1: segs.push_back(Segment::neg(name)); break;
        default: segs.push_back(Segment::star({name})); break;
      }
    }
    Path p(segs);
    Path norm = normalize(p);
    EXPECT_EQ(normalize(norm), norm);
    EXPECT_LE(norm.size(), p.size());
  }
}

TEST_F(RandomRelations, SelfLassoAlwaysSucceedsWithIdenticalResult) {
  for (int i = 0; i < 200; ++i) {
    AliasRelation r = next();
    auto m = lasso(r, r);
    ASSERT_TRUE(m);
    EXPECT_EQ(regularize(*m), r);
  }
}

// Pump each pair of a random relation once and check that a lasso is found
// and that all deeper pumps are instances of the starred pairs.
TEST_F(RandomRelations, PumpClosure) {
  for (int i = 0; i < 200; ++i) {
    AliasRelation r = next();
    if (r.empty()) continue;

    AliasRelation pumped;
    for (const auto& p : r.pairs()) {
      auto pump_side = [&](const Path& e) {
        auto ds = decompositions(e);
        const Decomposition& d = ds[rng() % ds.size()];
        return concat(concat(d.x, d.y), concat(d.y, d.z));
      };
      pumped.insert(pump_side(p.lhs), pump_side(p.rhs));
    }
    if (pumped.size() != r.size()) continue;  // pumping collapsed two pairs

    auto m = lasso(r, pumped);
    if (!m) continue;  // canonical reordering can break pairwise pumps
    AliasRelation reg = regularize(*m);
    for (const auto& entry : m->entries) {
      for (int k = 0; k <= 5; ++k) {
        auto pow = [&](const Decomposition& d) {
          Path mid;
          for (int j = 0; j < k; ++j) mid = concat(mid, d.y);
          return concat(concat(d.x, mid), d.z);
        };
        Path e1 = pow(entry.lhs_split);
        Path e2 = pow(entry.rhs_split);
        if (e1 == e2) continue;
        EXPECT_TRUE(may_alias(reg, e1, e2))
            << "k=" << k << " " << e1.render() << " ~ " << e2.render();
      }
    }
  }
}

TEST_F(RandomRelations, SubstituteEmptyIsIdentity) {
  for (int i = 0; i < 100; ++i) {
    AliasRelation r = next();
    EXPECT_EQ(substitute(r, {}, {}), r);
    EXPECT_EQ(distribute_prefix(Path::of("Current"), r), r);
  }
}

}  // namespace
}  // namespace aliascalc
