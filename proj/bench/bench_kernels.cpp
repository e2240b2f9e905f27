#include <benchmark/benchmark.h>

#include <random>

#include "twirlsim/kernels.hpp"
#include "twirlsim/rotation_set.hpp"
#include "twirlsim/rotations.hpp"

using namespace twirlsim;

namespace {

std::vector<WeightedUnitary> elements(std::size_t n) {
  return realize(RotationSetSpec::make(SetVariant::euler).with_monte_carlo(n, 1));
}

std::vector<EnsembleMember> members(std::size_t n) {
  std::mt19937_64 rng(2);
  std::vector<EnsembleMember> out(n);
  for (auto& m : out) m = {1.0 / static_cast<double>(n), random_deviation(rng)};
  return out;
}

const Eigen::Vector4d kEnergies(2.9e3, -1.1e3, 1.2e3, -3.0e3);

template <bool Parallel>
void BM_BilateralPtm(benchmark::State& state) {
  const auto el = elements(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    if constexpr (Parallel)
      benchmark::DoNotOptimize(kernels::bilateral_ptm_sum(el));
    else
      benchmark::DoNotOptimize(kernels::reference::bilateral_ptm_sum(el));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <bool Parallel>
void BM_BilateralConjugation(benchmark::State& state) {
  const auto el = elements(static_cast<std::size_t>(state.range(0)));
  std::mt19937_64 rng(3);
  const Mat4 rho = random_state<4>(rng).matrix();
  for (auto _ : state) {
    if constexpr (Parallel)
      benchmark::DoNotOptimize(kernels::bilateral_conjugation_sum(el, rho));
    else
      benchmark::DoNotOptimize(kernels::reference::bilateral_conjugation_sum(el, rho));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <bool Parallel>
void BM_Evolve(benchmark::State& state) {
  auto m = members(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    if constexpr (Parallel)
      kernels::evolve_members(m, kEnergies, 1e-3);
    else
      kernels::reference::evolve_members(m, kEnergies, 1e-3);
    benchmark::ClobberMemory();
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <bool Parallel>
void BM_SplitAndMean(benchmark::State& state) {
  const auto m = members(static_cast<std::size_t>(state.range(0)));
  std::vector<Mat4> rotations;
  for (int k = 0; k < 16; ++k) rotations.push_back(bilateral(rotation_z(2 * kPi * k / 16)));
  for (auto _ : state) {
    if constexpr (Parallel) {
      const auto s = kernels::split_members(m, rotations);
      benchmark::DoNotOptimize(kernels::weighted_mean(s));
    } else {
      const auto s = kernels::reference::split_members(m, rotations);
      benchmark::DoNotOptimize(kernels::reference::weighted_mean(s));
    }
  }
  state.SetItemsProcessed(state.iterations() * state.range(0) * 16);
}

template <bool Parallel>
void BM_Fid(benchmark::State& state) {
  std::mt19937_64 rng(4);
  const Mat4 rho = random_deviation(rng);
  const Mat4 obs = random_deviation(rng);
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    if constexpr (Parallel)
      benchmark::DoNotOptimize(kernels::fid(rho, kEnergies, obs, n, 2.7e-4));
    else
      benchmark::DoNotOptimize(kernels::reference::fid(rho, kEnergies, obs, n, 2.7e-4));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(BM_BilateralPtm<false>)->Name("bilateral_ptm/reference")->Arg(4096)->Arg(65536);
BENCHMARK(BM_BilateralPtm<true>)->Name("bilateral_ptm/parallel")->Arg(4096)->Arg(65536);
BENCHMARK(BM_BilateralConjugation<false>)->Name("bilateral_conjugation/reference")->Arg(65536);
BENCHMARK(BM_BilateralConjugation<true>)->Name("bilateral_conjugation/parallel")->Arg(65536);
BENCHMARK(BM_Evolve<false>)->Name("evolve/reference")->Arg(4096)->Arg(65536);
BENCHMARK(BM_Evolve<true>)->Name("evolve/parallel")->Arg(4096)->Arg(65536);
BENCHMARK(BM_SplitAndMean<false>)->Name("split_mean/reference")->Arg(4096);
BENCHMARK(BM_SplitAndMean<true>)->Name("split_mean/parallel")->Arg(4096);
BENCHMARK(BM_Fid<false>)->Name("fid/reference")->Arg(4096);
BENCHMARK(BM_Fid<true>)->Name("fid/parallel")->Arg(4096);

BENCHMARK_MAIN();
