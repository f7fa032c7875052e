#include <benchmark/benchmark.h>

#include <random>

#include "idpart/idpart.hpp"

namespace {

using namespace idpart;

LabeledState random_state(std::size_t d, std::size_t n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  std::vector<Complex> amps(checked_dimension(d, n));
  for (auto& a : amps) a = {g(rng), g(rng)};
  return LabeledState::normalized(OneParticleBasis::numbered(d), n, std::move(amps));
}

void BM_PlanckCount(benchmark::State& state) {
  const CountingProblem p{static_cast<int>(state.range(0)), static_cast<int>(state.range(0)), 1.0};
  for (auto _ : state) benchmark::DoNotOptimize(planck_count(p));
}
BENCHMARK(BM_PlanckCount)->Arg(10)->Arg(100)->Arg(1000);

void BM_EnumerateSymbols(benchmark::State& state) {
  const CountingProblem p{4, static_cast<int>(state.range(0)), 1.0};
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_symbols(p));
}
BENCHMARK(BM_EnumerateSymbols)->Arg(7)->Arg(20);

void BM_SectorProject(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto s = random_state(4, n, 1);
  for (auto _ : state) benchmark::DoNotOptimize(sector_project(s, ExchangeSector::kAntisymmetric));
}
BENCHMARK(BM_SectorProject)->DenseRange(2, 6, 2);

void BM_DetectEmergentParticles(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(2);
  std::normal_distribution<double> g;
  std::vector<CVector> factors;
  for (int i = 0; i < 3; ++i) {
    CVector v(static_cast<Eigen::Index>(d));
    for (auto& x : v) x = {g(rng), g(rng)};
    factors.push_back(v);
  }
  const auto s = symmetrized_product(OneParticleBasis::numbered(d), factors, ExchangeSector::kAntisymmetric);
  for (auto _ : state) benchmark::DoNotOptimize(detect_emergent_particles(s, ExchangeSector::kAntisymmetric));
}
BENCHMARK(BM_DetectEmergentParticles)->Arg(4)->Arg(8);

void BM_MeasurePortsAndSpins(benchmark::State& state) {
  const BeamSplitterScenario sc;
  const auto out = evolve_through_splitter(build_initial_state(sc), sc);
  for (auto _ : state) benchmark::DoNotOptimize(measure_ports_and_spins(out, sc));
}
BENCHMARK(BM_MeasurePortsAndSpins);

void BM_JointSpatialDensity(benchmark::State& state) {
  const GaussianPacket s{-5.0, 1.0, 0.0};
  const GaussianPacket n{5.0, 1.0, 0.0};
  const auto grid = GridSpec::covering(s, n, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(joint_spatial_density(s, n, grid));
}
BENCHMARK(BM_JointSpatialDensity)->Arg(64)->Arg(256);

}  // namespace

BENCHMARK_MAIN();
