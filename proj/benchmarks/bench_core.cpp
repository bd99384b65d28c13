#include <cmath>
#include <random>

#include <benchmark/benchmark.h>

#include "sqz/compiler.hpp"
#include "sqz/metrology.hpp"
#include "sqz/squeezer.hpp"
#include "sqz/tomography.hpp"
#include "sqz/units.hpp"

namespace {

using namespace sqz;

const ProtocolConfig kConfig = ProtocolConfig::with_ancilla_db(0.25, 5.1);

void BM_RunDeterministic(benchmark::State& state) {
  const GaussianState in = make_coherent(2, 2);
  for (auto _ : state) benchmark::DoNotOptimize(run_deterministic(kConfig, ImperfectionModel::degraded(), in));
}
BENCHMARK(BM_RunDeterministic);

void BM_Trajectory(benchmark::State& state) {
  const GaussianState in = make_coherent(2, 2);
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(run_trajectory(kConfig, ImperfectionModel::defaults(), in, n, 1));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Trajectory)->Arg(1000)->Arg(100000)->Unit(benchmark::kMillisecond);

void BM_Reconstruct(benchmark::State& state) {
  const GaussianState s = run_deterministic(kConfig, ImperfectionModel::defaults(), make_coherent(1, 1)).output;
  const PhaseScanRecord rec = simulate_phase_scan(s, 25, 4000, 7);
  const WignerGridSpec spec = WignerGridSpec::around(s.mean()(0), s.mean()(1), std::sqrt(s.cov()(0, 0)),
                                                     std::sqrt(s.cov()(1, 1)), 6.0,
                                                     static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(reconstruct_wigner(rec, spec));
}
BENCHMARK(BM_Reconstruct)->Arg(51)->Arg(101)->Unit(benchmark::kMillisecond);

void BM_PhaseScan(benchmark::State& state) {
  const GaussianState s = make_squeezed_vacuum(0.5);
  for (auto _ : state) benchmark::DoNotOptimize(simulate_phase_scan(s, 25, 4000, 3));
}
BENCHMARK(BM_PhaseScan)->Unit(benchmark::kMillisecond);

void BM_EulerDecompose(benchmark::State& state) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  Matrix2 m;
  do m << u(rng), u(rng), u(rng), u(rng);
  while (m.determinant() < 0.1);
  m /= std::sqrt(m.determinant());
  for (auto _ : state) benchmark::DoNotOptimize(euler_decompose(m));
}
BENCHMARK(BM_EulerDecompose);

void BM_Fidelity(benchmark::State& state) {
  const GaussianState target = ideal_squeezed_target(make_coherent(2, 2), r_from_T(0.25));
  const GaussianState out = run_deterministic(kConfig, ImperfectionModel::defaults(), make_coherent(2, 2)).output;
  for (auto _ : state) benchmark::DoNotOptimize(fidelity_gaussian(target, out));
}
BENCHMARK(BM_Fidelity);

}  // namespace

BENCHMARK_MAIN();
