// Serial twins of the OpenMP kernels. Kept for testing and benchmarking.

#include <algorithm>
#include <cmath>
#include <vector>

#include "pairwise.hpp"
#include "vortexlab/kernels/pointwise.hpp"

namespace vortexlab::kernels::reference {

namespace {

template <class Term>
double blocked_reduce(std::size_t n, const Term& term) {
  const std::size_t blocks = detail::block_count(n, kReductionBlock);
  if (blocks == 0) return 0.0;
  std::vector<double> partial(blocks);
  for (std::size_t b = 0; b < blocks; ++b) {
    const std::size_t begin = b * kReductionBlock;
    const std::size_t end = std::min(n, begin + kReductionBlock);
    partial[b] = detail::pairwise(term, begin, end);
  }
  return detail::pairwise([&](std::size_t b) { return partial[b]; }, 0, blocks);
}

}  // namespace

double blocked_sum(std::span<const double> x) {
  return blocked_reduce(x.size(), [&](std::size_t i) { return x[i]; });
}

double blocked_dot(std::span<const double> x, std::span<const double> y) {
  return blocked_reduce(x.size(), [&](std::size_t i) { return x[i] * y[i]; });
}

double max_abs(std::span<const double> x) {
  double m = 0.0;
  for (double v : x) m = std::max(m, std::abs(v));
  return m;
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += alpha * x[i];
}

void xpby(std::span<const double> x, double beta, std::span<double> y) {
  for (std::size_t i = 0; i < y.size(); ++i) y[i] = x[i] + beta * y[i];
}

void multiply(std::span<const double> a, std::span<const double> b, std::span<double> out) {
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a[i] * b[i];
}

void scale_spectrum(std::span<std::complex<double>> spectrum, std::span<const double> symbol) {
  for (std::size_t i = 0; i < spectrum.size(); ++i) spectrum[i] *= symbol[i];
}

std::size_t evaluate_exp_terms(std::span<const double> f, std::span<const ExpTerm> terms,
                               double exponent_guard, const ExpTermOutputs& out) {
  std::size_t first_overflow = kNoOverflow;
  for (std::size_t i = 0; i < f.size(); ++i) {
    double value = 0.0;
    double potential = 0.0;
    double energy = 0.0;
    for (const ExpTerm& term : terms) {
      const double exponent = term.rate * f[i];
      if (exponent > exponent_guard) {
        first_overflow = std::min(first_overflow, i);
        continue;
      }
      const double scaled = term.coefficient[i] * std::exp(exponent);
      const double magnitude = std::abs(term.rate);
      value += term.rate > 0.0 ? scaled : -scaled;
      potential += magnitude * scaled;
      energy += scaled / magnitude;
    }
    if (!out.value.empty()) out.value[i] = value;
    if (!out.potential.empty()) out.potential[i] = potential;
    if (!out.energy.empty()) out.energy[i] = energy;
  }
  return first_overflow;
}

}  // namespace vortexlab::kernels::reference
