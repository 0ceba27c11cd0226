// OpenMP kernels against their serial twins, plus one end-to-end Newton solve.
//
//   ./bench_kernels --benchmark_filter=ExpTerms
//   VORTEXLAB_THREADS=1 ./bench_kernels     (the parallel path on one thread)

#include <benchmark/benchmark.h>

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "vortexlab/kernels/pointwise.hpp"
#include "vortexlab/vortex/sweep.hpp"

namespace k = vortexlab::kernels;

namespace {

std::vector<double> random_vector(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> v(n);
  for (auto& x : v) x = u(rng);
  return v;
}

std::size_t samples(const benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  return n * n;
}

template <bool Parallel>
void BM_Dot(benchmark::State& state) {
  const auto x = random_vector(samples(state), 1);
  const auto y = random_vector(samples(state), 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(Parallel ? k::blocked_dot(x, y) : k::reference::blocked_dot(x, y));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(x.size()));
}

template <bool Parallel>
void BM_Axpy(benchmark::State& state) {
  const auto x = random_vector(samples(state), 3);
  auto y = random_vector(samples(state), 4);
  for (auto _ : state) {
    if constexpr (Parallel) {
      k::axpy(1e-9, x, y);
    } else {
      k::reference::axpy(1e-9, x, y);
    }
    benchmark::ClobberMemory();
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(x.size()));
}

template <bool Parallel>
void BM_ExpTerms(benchmark::State& state) {
  const std::size_t n = samples(state);
  const auto f = random_vector(n, 5);
  const std::vector<double> a(n, 1.0), b(n, 0.5);
  const k::ExpTerm terms[] = {{a, 2.0}, {b, -1.0}};
  std::vector<double> value(n), potential(n), energy(n);
  const k::ExpTermOutputs out{value, potential, energy};
  for (auto _ : state) {
    benchmark::DoNotOptimize(Parallel ? k::evaluate_exp_terms(f, terms, 700.0, out)
                                      : k::reference::evaluate_exp_terms(f, terms, 700.0, out));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}

template <bool Parallel>
void BM_ScaleSpectrum(benchmark::State& state) {
  const std::size_t n = samples(state) / 2;
  std::vector<std::complex<double>> spectrum(n, {1.0, 0.5});
  std::vector<double> symbol(n, 1.0);
  for (auto _ : state) {
    if constexpr (Parallel) {
      k::scale_spectrum(spectrum, symbol);
    } else {
      k::reference::scale_spectrum(spectrum, symbol);
    }
    benchmark::ClobberMemory();
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}

void BM_ClassicalSolve(benchmark::State& state) {
  using namespace vortexlab;
  const auto geometry = torus::TorusGeometry::unit();
  const green::Divisor d(geometry, {{{0.3, 0.3}, 1}, {{0.7, 0.6}, 2}});
  const auto n = static_cast<std::size_t>(state.range(0));
  const vortex::VortexSpec spec =
      vortex::ClassicalVortexSpec{d, 0.1, geometry, torus::GridSpec::square(n)};
  const vortex::ReducedModel model = vortex::reduce(spec);
  for (auto _ : state) benchmark::DoNotOptimize(kw::kw_solve(model.problem).residual_sup);
}

}  // namespace

#define VORTEXLAB_PAIR(name)                                                     \
  BENCHMARK(name<true>)->Name(#name "/parallel")->RangeMultiplier(2)->Range(128, 1024); \
  BENCHMARK(name<false>)->Name(#name "/serial")->RangeMultiplier(2)->Range(128, 1024)

VORTEXLAB_PAIR(BM_Dot);
VORTEXLAB_PAIR(BM_Axpy);
VORTEXLAB_PAIR(BM_ExpTerms);
VORTEXLAB_PAIR(BM_ScaleSpectrum);
BENCHMARK(BM_ClassicalSolve)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
