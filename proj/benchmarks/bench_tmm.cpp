#include <benchmark/benchmark.h>

#include "qmir/compensation.hpp"
#include "qmir/model.hpp"
#include "qmir/tmm.hpp"

namespace {

qmir::CoatingStack make_resonant_stack(int j) {
  const auto* low = qmir::find_builtin_material("SiO2");
  const auto* high = qmir::find_builtin_material("Ta2O5");
  return qmir::build_stack(33, 8, j, 3.14159265358979323846, *low, *high, *low,
                           qmir::default_k0());
}

void BM_StackReflectance(benchmark::State& state) {
  const qmir::CoatingStack s = make_resonant_stack(16);
  const double k = s.k0 * 1.0001;
  for (auto _ : state) {
    benchmark::DoNotOptimize(qmir::stack_reflectance(s, k));
  }
}
BENCHMARK(BM_StackReflectance);

void BM_DgammaDeps(benchmark::State& state) {
  const qmir::CoatingStack s = make_resonant_stack(16);
  const double k = s.k0 * 1.0001;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        qmir::dgamma_deps(s, k, qmir::StrainModel::geometric));
  }
}
BENCHMARK(BM_DgammaDeps);

void BM_MagicRoots(benchmark::State& state) {
  const qmir::CoatingStack s = make_resonant_stack(16);
  for (auto _ : state) {
    benchmark::DoNotOptimize(qmir::find_magic_wavevectors(
        s, -1600.0, {0.999 * s.k0, 1.001 * s.k0},
        qmir::StrainModel::geometric, 2048));
  }
}
BENCHMARK(BM_MagicRoots);

}  // namespace
