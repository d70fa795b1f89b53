#include <benchmark/benchmark.h>

#include "dlex/parser.hpp"
#include "dlex/reasoner.hpp"
#include "dlex/rewrite.hpp"
#include "dlex/sim.hpp"

namespace {

dlex::Interpretation ring(int n) {
  dlex::Interpretation i;
  for (int k = 0; k < n; ++k) i.add_element("e" + std::to_string(k));
  for (int k = 0; k < n; ++k) {
    if (k % 2) i.set_concept("A", i.domain()[k]);
    i.add_role_edge("r", i.domain()[k], i.domain()[(k + 1) % n]);
  }
  return i;
}

void bm_max_bisimulation(benchmark::State& state) {
  dlex::Interpretation i1 = ring(static_cast<int>(state.range(0)));
  dlex::Interpretation i2 = ring(static_cast<int>(state.range(0)) / 2);
  for (auto _ : state)
    benchmark::DoNotOptimize(dlex::max_relation(i1, i2, dlex::RelationNotion::bisim()));
}
BENCHMARK(bm_max_bisimulation)->Arg(16)->Arg(64);

void bm_satisfiable_types(benchmark::State& state) {
  dlex::TBox t = dlex::parse_tbox(
      "A [= some r B.\nB [= some r (A or C).\nC and A [= bot.\nsome inv(r) C [= only r B.");
  for (auto _ : state)
    benchmark::DoNotOptimize(dlex::satisfiable_types(t, dlex::Dialect::ALCI));
}
BENCHMARK(bm_satisfiable_types);

void bm_rewrite_alci_to_alc(benchmark::State& state) {
  dlex::TBox t = dlex::parse_tbox("some inv(r) top [= B.");
  for (auto _ : state) benchmark::DoNotOptimize(dlex::rewrite_alci_to_alc(t));
}
BENCHMARK(bm_rewrite_alci_to_alc);

void bm_product(benchmark::State& state) {
  dlex::Interpretation i = ring(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(dlex::product(i, i));
}
BENCHMARK(bm_product)->Arg(16)->Arg(32);

}  // namespace

BENCHMARK_MAIN();
