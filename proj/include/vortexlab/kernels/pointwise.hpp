#pragma once

// Data-parallel inner loops used by the field, solver and diagnostic layers.
//
// Every kernel has an OpenMP implementation in `vortexlab::kernels` and a
// plain serial twin in `vortexlab::kernels::reference`. The two produce
// bit-identical results: reductions are split into fixed-size blocks whose
// layout does not depend on the thread count, each block is summed pairwise,
// and the block partials are summed pairwise in block order.

#include <complex>
#include <cstddef>
#include <limits>
#include <span>

namespace vortexlab::kernels {

inline constexpr std::size_t kReductionBlock = 2048;
inline constexpr std::size_t kNoOverflow = std::numeric_limits<std::size_t>::max();

/// One term `coefficient * exp(rate * f)` of a Kazdan-Warner nonlinearity.
/// Positive rates are the e^{+alpha f} family, negative rates the e^{-beta f} family.
struct ExpTerm {
  std::span<const double> coefficient;
  double rate = 0.0;
};

/// Outputs of `evaluate_exp_terms`. Empty spans are skipped.
///   value     = sum sign(rate) * c * e^{rate f}
///   potential = sum |rate| * c * e^{rate f}        (derivative of value in f)
///   energy    = sum c / |rate| * e^{rate f}        (antiderivative of value in f)
struct ExpTermOutputs {
  std::span<double> value;
  std::span<double> potential;
  std::span<double> energy;
};

double blocked_sum(std::span<const double> x);
double blocked_dot(std::span<const double> x, std::span<const double> y);
double max_abs(std::span<const double> x);

// y += alpha * x
void axpy(double alpha, std::span<const double> x, std::span<double> y);
// y = x + beta * y
void xpby(std::span<const double> x, double beta, std::span<double> y);
// out = a * b
void multiply(std::span<const double> a, std::span<const double> b, std::span<double> out);

// spectrum[k] *= symbol[k]
void scale_spectrum(std::span<std::complex<double>> spectrum, std::span<const double> symbol);

/// Returns the smallest sample index whose exponent rate*f exceeds `exponent_guard`,
/// or kNoOverflow. Outputs are only meaningful when kNoOverflow is returned.
std::size_t evaluate_exp_terms(std::span<const double> f, std::span<const ExpTerm> terms,
                               double exponent_guard, const ExpTermOutputs& out);

namespace reference {

double blocked_sum(std::span<const double> x);
double blocked_dot(std::span<const double> x, std::span<const double> y);
double max_abs(std::span<const double> x);
void axpy(double alpha, std::span<const double> x, std::span<double> y);
void xpby(std::span<const double> x, double beta, std::span<double> y);
void multiply(std::span<const double> a, std::span<const double> b, std::span<double> out);
void scale_spectrum(std::span<std::complex<double>> spectrum, std::span<const double> symbol);
std::size_t evaluate_exp_terms(std::span<const double> f, std::span<const ExpTerm> terms,
                               double exponent_guard, const ExpTermOutputs& out);

}  // namespace reference

/// Number of OpenMP threads kernels will use (honours VORTEXLAB_THREADS).
int thread_count();

}  // namespace vortexlab::kernels
