#pragma once

#include <complex>

namespace vortexlab::green {

using Complex = std::complex<double>;

inline constexpr int kDefaultThetaTerms = 32;

/// Partial sum 2 sum_{n < n_terms} (-1)^n q^{(n+1/2)^2} sin((2n+1) pi z), q = e^{i pi tau}.
/// Throws BadTau if Im tau <= 0, InvalidArgument if n_terms < 8.
Complex theta1(Complex z, Complex tau, int n_terms = kDefaultThetaTerms);

/// d/dz of the same partial sum.
Complex theta1_derivative(Complex z, Complex tau, int n_terms = kDefaultThetaTerms);

}  // namespace vortexlab::green
