#include <benchmark/benchmark.h>

#include "aliascalc/dotcomplete.hpp"
#include "aliascalc/machine.hpp"
#include "aliascalc/validate.hpp"

namespace {

using namespace aliascalc;

ClassTable two_attr_table() {
  ClassTable ct;
  ct.classes = {{"C", {{"a", "C"}, {"b", "C"}}}};
  return ct;
}

void BM_DotComplete(benchmark::State& state) {
  ClassTable ct = two_attr_table();
  VarEnv env;
  env.vars = {{"x", "C"}, {"y", "C"}};

  AliasRelation r;
  Path left = Path::of("x");
  Path right = Path::of("y");
  for (int i = 0; i < state.range(0); ++i) {
    r.insert(left, right);
    left = left.append_atom(i % 2 ? "a" : "b");
    right = right.append_atom(i % 2 ? "b" : "a");
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(dot_complete(r, env, ct, 1));
  }
}
BENCHMARK(BM_DotComplete)->Arg(2)->Arg(4)->Arg(8);

void BM_AnalyzeChainLoop(benchmark::State& state) {
  auto parsed = load_program(R"(
class NODE { attr next: NODE; }
program {
  local x: NODE;
  local y: NODE;
  x := y;
  loop { x := x.next; }
}
)");
  for (auto _ : state) {
    benchmark::DoNotOptimize(run(*parsed.program, {}));
  }
}
BENCHMARK(BM_AnalyzeChainLoop);

void BM_AnalyzeMutualRecursion(benchmark::State& state) {
  auto parsed = load_program(R"(
class C { attr a: C; attr b: C; }
fn f(x) { x := x.a; call g(x); }
fn g(x) { x := x.b; call f(x); }
program { local x: C; call f(x); }
)");
  for (auto _ : state) {
    benchmark::DoNotOptimize(run(*parsed.program, {}));
  }
}
BENCHMARK(BM_AnalyzeMutualRecursion);

void BM_MayAliasQuery(benchmark::State& state) {
  AliasRelation r;
  r.insert(Path::of("x"), Path({Segment::atom("y"), Segment::star({"next"})}));
  Path deep = Path::of("y");
  for (int i = 0; i < 16; ++i) deep = deep.append_atom("next");
  for (auto _ : state) {
    benchmark::DoNotOptimize(may_alias(r, Path::of("x"), deep));
  }
}
BENCHMARK(BM_MayAliasQuery);

}  // namespace
