#include <omp.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>
#include <vector>

#include "pairwise.hpp"
#include "vortexlab/kernels/pointwise.hpp"

namespace vortexlab::kernels {

namespace {

int threads_from_environment() {
  int n = omp_get_max_threads();
  if (const char* env = std::getenv("VORTEXLAB_THREADS")) {
    try {
      const int cap = std::stoi(env);
      if (cap > 0) n = std::min(n, cap);
    } catch (...) {
      // malformed values are ignored
    }
  }
  return std::max(n, 1);
}

using Index = std::ptrdiff_t;

template <class Term>
double blocked_reduce(std::size_t n, const Term& term) {
  const std::size_t blocks = detail::block_count(n, kReductionBlock);
  if (blocks == 0) return 0.0;
  std::vector<double> partial(blocks);
#pragma omp parallel for schedule(static) num_threads(thread_count())
  for (Index b = 0; b < static_cast<Index>(blocks); ++b) {
    const std::size_t begin = static_cast<std::size_t>(b) * kReductionBlock;
    const std::size_t end = std::min(n, begin + kReductionBlock);
    partial[b] = detail::pairwise(term, begin, end);
  }
  return detail::pairwise([&](std::size_t b) { return partial[b]; }, 0, blocks);
}

}  // namespace

int thread_count() {
  static const int n = threads_from_environment();
  return n;
}

double blocked_sum(std::span<const double> x) {
  return blocked_reduce(x.size(), [&](std::size_t i) { return x[i]; });
}

double blocked_dot(std::span<const double> x, std::span<const double> y) {
  return blocked_reduce(x.size(), [&](std::size_t i) { return x[i] * y[i]; });
}

double max_abs(std::span<const double> x) {
  double m = 0.0;
  const Index n = static_cast<Index>(x.size());
#pragma omp parallel for schedule(static) reduction(max : m) num_threads(thread_count())
  for (Index i = 0; i < n; ++i) m = std::max(m, std::abs(x[i]));
  return m;
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  const Index n = static_cast<Index>(y.size());
#pragma omp parallel for schedule(static) num_threads(thread_count())
  for (Index i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void xpby(std::span<const double> x, double beta, std::span<double> y) {
  const Index n = static_cast<Index>(y.size());
#pragma omp parallel for schedule(static) num_threads(thread_count())
  for (Index i = 0; i < n; ++i) y[i] = x[i] + beta * y[i];
}

void multiply(std::span<const double> a, std::span<const double> b, std::span<double> out) {
  const Index n = static_cast<Index>(out.size());
#pragma omp parallel for schedule(static) num_threads(thread_count())
  for (Index i = 0; i < n; ++i) out[i] = a[i] * b[i];
}

void scale_spectrum(std::span<std::complex<double>> spectrum, std::span<const double> symbol) {
  const Index n = static_cast<Index>(spectrum.size());
#pragma omp parallel for schedule(static) num_threads(thread_count())
  for (Index i = 0; i < n; ++i) spectrum[i] *= symbol[i];
}

std::size_t evaluate_exp_terms(std::span<const double> f, std::span<const ExpTerm> terms,
                               double exponent_guard, const ExpTermOutputs& out) {
  const Index n = static_cast<Index>(f.size());
  const bool want_value = !out.value.empty();
  const bool want_potential = !out.potential.empty();
  const bool want_energy = !out.energy.empty();
  std::size_t first_overflow = kNoOverflow;

#pragma omp parallel for schedule(static) reduction(min : first_overflow) num_threads(thread_count())
  for (Index i = 0; i < n; ++i) {
    double value = 0.0;
    double potential = 0.0;
    double energy = 0.0;
    for (const ExpTerm& term : terms) {
      const double exponent = term.rate * f[i];
      if (exponent > exponent_guard) {
        first_overflow = std::min(first_overflow, static_cast<std::size_t>(i));
        continue;
      }
      const double scaled = term.coefficient[i] * std::exp(exponent);
      const double magnitude = std::abs(term.rate);
      value += term.rate > 0.0 ? scaled : -scaled;
      potential += magnitude * scaled;
      energy += scaled / magnitude;
    }
    if (want_value) out.value[i] = value;
    if (want_potential) out.potential[i] = potential;
    if (want_energy) out.energy[i] = energy;
  }
  return first_overflow;
}

}  // namespace vortexlab::kernels
