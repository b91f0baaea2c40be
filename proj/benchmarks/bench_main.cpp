#include <benchmark/benchmark.h>

#include <cmath>
#include <random>

#include "entmed/corr.hpp"
#include "entmed/dynamics.hpp"
#include "entmed/gaussian.hpp"
#include "entmed/langevin.hpp"
#include "entmed/scenarios.hpp"

using namespace entmed;

static void BM_SymplecticEigenvalues(benchmark::State& state) {
  std::mt19937_64 rng(7);
  const RMat v = random_physical_cm(static_cast<int>(state.range(0)), rng);
  for (auto _ : state) benchmark::DoNotOptimize(symplectic_eigenvalues(v));
}
BENCHMARK(BM_SymplecticEigenvalues)->Arg(2)->Arg(6)->Arg(12);

static void BM_LogNegativityCv(benchmark::State& state) {
  std::mt19937_64 rng(8);
  const RMat v = random_physical_cm(6, rng);
  for (auto _ : state) benchmark::DoNotOptimize(log_negativity_cv(v, {0, 1, 2, 3}, {4, 5}));
}
BENCHMARK(BM_LogNegativityCv);

static void BM_ReeThreeQubits(benchmark::State& state) {
  Scenario s = scenario_hamiltonian("instrumental_discord");
  const DensityMatrix r = evolve_unitary(s.rho0, s.H, M_PI / 8);
  const Partition p({"A"}, {"B", "C"});
  ReeOptions opts;
  opts.restarts = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(ree_numeric(r, p, opts).value);
}
BENCHMARK(BM_ReeThreeQubits)->Arg(1)->Arg(16)->Unit(benchmark::kMillisecond);

static void BM_RedDiscord(benchmark::State& state) {
  Scenario s = scenario_hamiltonian("instrumental_discord");
  const DensityMatrix r = evolve_unitary(s.rho0, s.H, M_PI / 8);
  for (auto _ : state) benchmark::DoNotOptimize(red_discord(r, "C").value);
}
BENCHMARK(BM_RedDiscord)->Unit(benchmark::kMillisecond);

static void BM_LindbladEvolve(benchmark::State& state) {
  Scenario s = scenario_hamiltonian("instrumental_discord");
  LindbladModel m(s.H);
  m.add_local_jump("C", 0.3 * ops::sigma_z());
  const EvolutionSpec spec{1.0, 0.0, {0.5, 1.0}};
  for (auto _ : state) benchmark::DoNotOptimize(lindblad_evolve(s.rho0, m, spec));
}
BENCHMARK(BM_LindbladEvolve)->Unit(benchmark::kMillisecond);

static void BM_PropagateTrapped(benchmark::State& state) {
  const DriftModel m = trapped_drift_eta(0.05, 0.0, 0.0, 0.0, 0.0);
  const auto grid = linspace(0.0, 3.0, 301);
  for (auto _ : state) benchmark::DoNotOptimize(propagate_cm(m, grid));
}
BENCHMARK(BM_PropagateTrapped)->Unit(benchmark::kMillisecond);

static void BM_SteadyBacteria(benchmark::State& state) {
  BacteriaConfig cfg;
  cfg.M = static_cast<int>(state.range(0));
  const DriftModel m = bacteria_drift(cfg);
  for (auto _ : state) benchmark::DoNotOptimize(steady_state(m));
}
BENCHMARK(BM_SteadyBacteria)->Arg(4)->Arg(6)->Unit(benchmark::kMicrosecond);

static void BM_OptomechStability(benchmark::State& state) {
  const DriftModel m = optomech_drift(OptomechConfig{});
  for (auto _ : state) benchmark::DoNotOptimize(stability(m).stable);
}
BENCHMARK(BM_OptomechStability);
BENCHMARK_MAIN();
