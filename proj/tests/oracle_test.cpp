#include "aliascalc/oracle.hpp"

#include <gtest/gtest.h>

#include <random>

#include "aliascalc/machine.hpp"
#include "aliascalc/printer.hpp"
#include "aliascalc/validate.hpp"
#include "support/corpus.hpp"

namespace aliascalc {
namespace {

Program load(const char* text) {
  auto r = load_program(text);
  EXPECT_TRUE(r.diagnostics.empty());
  return *r.program;
}

const char* kList = R"(
class NODE { attr next: NODE; }
program {
  local x: NODE;
  local y: NODE;
  x := y;
  loop { x := x.next; }
}
)";

const char* kMutual = R"(
class C { attr a: C; attr b: C; }
fn f(x) { x := x.a; call g(x); }
fn g(x) { x := x.b; call f(x); }
program { local x: C; call f(x); }
)";

Path repeat_next(int k) {
  Path e = Path::of("y");
  for (int i = 0; i < k; ++i) e = e.append_atom("next");
  return e;
}

TEST(EvalTest, LoopUnionKeepsEveryUnrolling) {
  Program p = load(kList);
  OracleResult res = eval_program(p, {3, 3});
  for (int k = 0; k <= 3; ++k)
    EXPECT_TRUE(res.relation.contains(*make_pair(Path::of("x"), repeat_next(k)))) << k;
  EXPECT_TRUE(res.budget_hit);
}

TEST(EvalTest, SkipIsIdentity) {
  Program p = load("program { }");
  auto r = AliasRelation::of({{"u", "v"}});
  OracleResult res = eval(r, *p.main, p, p.entry_env, {2, 2});
  EXPECT_EQ(res.relation, r);
  EXPECT_FALSE(res.budget_hit);
}

TEST(EvalTest, QualifiedCallWorkedExample) {
  Program p = load(R"(
class C { attr y: C; }
fn f(x) { local y: C; y := x; }
program { local a: C; a.call f(a); }
)");
  OracleResult res = eval_program(p, {3, 3});
  EXPECT_EQ(res.relation, AliasRelation::of({{"a", "a.y"}, {"a.y", "a.y.y"}}));
}

TEST(UnfoldPowTest, ZeroIsIdentity) {
  Program p = load(kList);
  auto r = AliasRelation::of({{"x", "y"}});
  const Instruction& body = *p.main->second->first;  // x := x.next
  EXPECT_EQ(unfold_pow(r, body, 0, p, p.entry_env, {5, 5}), r);
}

TEST(UnfoldPowTest, OneEqualsSingleEval) {
  Program p = load(kList);
  auto r = AliasRelation::of({{"x", "y"}, {"x.next", "y.next"}});
  const Instruction& body = *p.main->second->first;
  auto once = unfold_pow(r, body, 1, p, p.entry_env, {5, 5});
  EXPECT_EQ(once, eval(r, body, p, p.entry_env, {5, 5}).relation);
  EXPECT_EQ(once, AliasRelation::of({{"x", "y.next"}, {"x.next", "y.next.next"}}));
}

TEST(UnfoldPowTest, TwoApplicationsOfSelfShift) {
  Program p = load(R"(
class C { attr a: C; attr b: C; }
program { local x: C; x := x.a; }
)");
  const Instruction& assign = *p.main;
  auto twice = unfold_pow(AliasRelation{}, assign, 2, p, p.entry_env, {5, 5});
  EXPECT_EQ(twice,
            AliasRelation::of({{"x", "x.a.a"}, {"x.a", "x.a.a.a"}, {"x.b", "x.a.a.b"}}));
}

TEST(OracleMachineTest, RecursionMatchesLoopRewriting) {
  // f(x) { x := x.a; call g(x) } with g calling back is, alias-wise, the
  // loop over the two-assignment cycle: the n-th unfolding of the cycle
  // equals the recursive evaluation cut at nesting 2n+1.
  Program rec = load(kMutual);
  Program loop = load(R"(
class C { attr a: C; attr b: C; }
program { local x: C; loop { x := x.a; x := x.b; } }
)");
  const Instruction& cycle = *loop.main->first;
  for (int n = 0; n <= 4; ++n) {
    auto unrolled = unfold_pow(AliasRelation{}, cycle, n, loop, loop.entry_env, {9, 9});
    OracleResult cut = eval_program(rec, {2 * n + 1, 2 * n + 1});
    EXPECT_EQ(unrolled, cut.relation) << "n=" << n;
  }
}

TEST(CheckSoundnessTest, ReferenceProgramsAreCovered) {
  for (const char* text : {kList, kMutual}) {
    Program p = load(text);
    Report rep = run(p, {});
    EXPECT_TRUE(check_soundness(p, {5, 5}, rep.final_relation).empty()) << text;
  }
}

TEST(CheckSoundnessTest, EmptyEngineResultIsCaught) {
  Program p = load(kList);
  auto missing = check_soundness(p, {5, 5}, AliasRelation{});
  ASSERT_FALSE(missing.empty());
  bool has_xy = false;
  for (const auto& pair : missing)
    has_xy |= pair == *make_pair(Path::of("x"), Path::of("y"));
  EXPECT_TRUE(has_xy);
}

TEST(CheckSoundnessTest, TruncatedCutModeIsCaught) {
  Program p = load(kList);
  AnalysisOptions opts;
  opts.mode = AnalysisOptions::Mode::CutAtL;
  opts.cut_steps = 2;  // halts before the loop produces anything
  Report rep = run(p, opts);
  EXPECT_FALSE(check_soundness(p, {5, 5}, rep.final_relation).empty());
}

TEST(OracleMachineTest, ExactAgreementWithoutLoopsAndCalls) {
  std::mt19937_64 rng(77001);
  corpus::CorpusOptions opt;
  opt.allow_loops = false;
  opt.allow_calls = false;
  opt.allow_qualified = false;
  for (int i = 0; i < 50; ++i) {
    Program p = corpus::random_program(rng, opt);
    Report rep = run(p, {});
    OracleResult res = eval_program(p, {5, 5});
    EXPECT_EQ(rep.final_relation, res.relation) << print_program(p);
  }
}

TEST(OracleTest, TruncationIsMonotone) {
  Program p = load(kList);
  AliasRelation prev;
  for (int n = 0; n <= 6; ++n) {
    OracleResult res = eval_program(p, {n, n});
    for (const auto& pair : prev.pairs()) EXPECT_TRUE(res.relation.contains(pair));
    prev = res.relation;
  }
}

TEST(OracleTest, OutputAlwaysConcrete) {
  std::mt19937_64 rng(77002);
  corpus::CorpusOptions opt;
  for (int i = 0; i < 40; ++i) {
    Program p = corpus::random_program(rng, opt);
    OracleResult res = eval_program(p, {3, 3});
    EXPECT_FALSE(res.relation.has_star());
    EXPECT_FALSE(res.relation.has_negative());
  }
}

}  // namespace
}  // namespace aliascalc
