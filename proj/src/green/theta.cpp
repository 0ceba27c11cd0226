#include "vortexlab/green/theta.hpp"

#include <numbers>

#include "vortexlab/error.hpp"

namespace vortexlab::green {

namespace {

constexpr double kPi = std::numbers::pi;
const Complex kI(0.0, 1.0);

void validate(Complex tau, int n_terms) {
  if (!(tau.imag() > 0.0)) throw Error(ErrorKind::BadTau, "theta1 needs Im tau > 0");
  if (n_terms < 8) throw Error(ErrorKind::InvalidArgument, "theta1 needs at least 8 terms");
}

// q^{(n+1/2)^2} e^{+-i(2n+1) pi z}, with the exponents combined before
// exponentiating so that neither factor overflows on its own.
struct ModePair {
  Complex plus;
  Complex minus;
};

ModePair mode(Complex z, Complex tau, int n) {
  const double h = n + 0.5;
  const Complex nome = kI * kPi * tau * (h * h);
  const Complex wave = kI * (2.0 * n + 1.0) * kPi * z;
  return {std::exp(nome + wave), std::exp(nome - wave)};
}

}  // namespace

Complex theta1(Complex z, Complex tau, int n_terms) {
  validate(tau, n_terms);
  Complex sum = 0.0;
  for (int n = 0; n < n_terms; ++n) {
    const ModePair m = mode(z, tau, n);
    const Complex s = (m.plus - m.minus) / (2.0 * kI);
    sum += (n % 2 == 0) ? s : -s;
  }
  return 2.0 * sum;
}

Complex theta1_derivative(Complex z, Complex tau, int n_terms) {
  validate(tau, n_terms);
  Complex sum = 0.0;
  for (int n = 0; n < n_terms; ++n) {
    const ModePair m = mode(z, tau, n);
    const Complex c = (2.0 * n + 1.0) * kPi * 0.5 * (m.plus + m.minus);
    sum += (n % 2 == 0) ? c : -c;
  }
  return 2.0 * sum;
}

}  // namespace vortexlab::green
