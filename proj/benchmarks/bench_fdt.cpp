#include <benchmark/benchmark.h>

#include "qmir/composite.hpp"
#include "qmir/fdt.hpp"
#include "qmir/model.hpp"

namespace {

qmir::BeamSubstrate make_beam() {
  return {1e-4, *qmir::find_builtin_material("SiO2"), 300.0};
}

void BM_CorrelationN(benchmark::State& state) {
  const qmir::BeamSubstrate b = make_beam();
  const double z = static_cast<double>(state.range(0)) * b.w0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(qmir::correlation_N(0.0, z, b));
  }
}
BENCHMARK(BM_CorrelationN)->Arg(0)->Arg(1)->Arg(10);

void BM_StrainCorrelationQ(benchmark::State& state) {
  const qmir::BeamSubstrate b = make_beam();
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        qmir::strain_correlation_Q(0.0, 3.0 * b.w0, 1e-3 * b.w0, b));
  }
}
BENCHMARK(BM_StrainCorrelationQ);

void BM_OptimalAlpha(benchmark::State& state) {
  const qmir::BeamSubstrate b = make_beam();
  for (auto _ : state) {
    benchmark::DoNotOptimize(qmir::optimal_alpha(10.0 * b.w0, b));
  }
}
BENCHMARK(BM_OptimalAlpha);

}  // namespace
