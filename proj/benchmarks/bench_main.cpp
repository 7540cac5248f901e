#include <benchmark/benchmark.h>

#include "fixtures.hpp"
#include "leekh/invariants.hpp"
#include "leekh/oracle.hpp"

using namespace leekh;

namespace {

const FieldSpec kQ = FieldSpec::rationals();

void BM_BuildCube_Trefoil(benchmark::State& state) {
  LinkDiagram d = parse_pd(fixtures::kTrefoilRH);
  for (auto _ : state) {
    auto c = build_lee_complex<Rational>(d, kQ);
    benchmark::DoNotOptimize(c.generator_count());
  }
}
BENCHMARK(BM_BuildCube_Trefoil);

void BM_BuildCube_819(benchmark::State& state) {
  LinkDiagram d = parse_pd(fixtures::k819);
  for (auto _ : state) {
    auto c = build_lee_complex<Rational>(d, kQ);
    benchmark::DoNotOptimize(c.generator_count());
  }
}
BENCHMARK(BM_BuildCube_819);

void BM_LeeModule_819_Full(benchmark::State& state) {
  LinkDiagram d = parse_pd(fixtures::k819);
  for (auto _ : state) {
    auto m = lee_module<Rational>(d, kQ, BuildStrategy::full);
    benchmark::DoNotOptimize(m.torsion.size());
  }
}
BENCHMARK(BM_LeeModule_819_Full);

void BM_LeeModule_819_Stream(benchmark::State& state) {
  LinkDiagram d = parse_pd(fixtures::k819);
  for (auto _ : state) {
    auto m = lee_module<Rational>(d, kQ, BuildStrategy::stream);
    benchmark::DoNotOptimize(m.torsion.size());
  }
}
BENCHMARK(BM_LeeModule_819_Stream);

void BM_LeeModule_819_F3(benchmark::State& state) {
  LinkDiagram d = parse_pd(fixtures::k819);
  FieldSpec f3 = FieldSpec::prime(3);
  for (auto _ : state) {
    auto m = lee_module<Fp>(d, f3, BuildStrategy::stream);
    benchmark::DoNotOptimize(m.torsion.size());
  }
}
BENCHMARK(BM_LeeModule_819_F3);

void BM_ConnectSum_Granny_Diagrammatic(benchmark::State& state) {
  LinkDiagram t = parse_pd(fixtures::kTrefoilRH);
  LinkDiagram g = connect_sum_pd(t, t);
  for (auto _ : state) {
    auto m = lee_module<Rational>(g, kQ);
    benchmark::DoNotOptimize(m.torsion.size());
  }
}
BENCHMARK(BM_ConnectSum_Granny_Diagrammatic);

void BM_KhovanovT0_819(benchmark::State& state) {
  LinkDiagram d = parse_pd(fixtures::k819);
  for (auto _ : state) {
    auto h = khovanov_t0<Rational>(d, kQ);
    benchmark::DoNotOptimize(h.total());
  }
}
BENCHMARK(BM_KhovanovT0_819);

}  // namespace

BENCHMARK_MAIN();
