#include <cmath>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "vortexlab/kernels/pointwise.hpp"

using namespace vortexlab;
using testing::Rng;

namespace {

std::vector<double> random_vector(Rng& rng, std::size_t n, double scale = 1.0) {
  std::vector<double> v(n);
  for (double& x : v) x = scale * rng.normal();
  return v;
}

}  // namespace

TEST_CASE("parallel and reference reductions agree bit for bit") {
  Rng rng(11);
  for (std::size_t n : {0ul, 1ul, 7ul, 2047ul, 2048ul, 2049ul, 10000ul, 65536ul}) {
    const auto x = random_vector(rng, n, 1e3);
    const auto y = random_vector(rng, n);
    CHECK(kernels::blocked_sum(x) == kernels::reference::blocked_sum(x));
    CHECK(kernels::blocked_dot(x, y) == kernels::reference::blocked_dot(x, y));
    CHECK(kernels::max_abs(x) == kernels::reference::max_abs(x));
  }
}

TEST_CASE("blocked sum is accurate on cancelling data") {
  std::vector<double> x;
  for (int k = 0; k < 100000; ++k) x.push_back(k % 2 == 0 ? 1e8 + 0.25 : -1e8);
  CHECK(kernels::blocked_sum(x) == doctest::Approx(12500.0).epsilon(1e-12));
}

TEST_CASE("elementwise kernels match their serial twins") {
  Rng rng(5);
  const std::size_t n = 5000;
  const auto x = random_vector(rng, n);
  auto y1 = random_vector(rng, n);
  auto y2 = y1;
  kernels::axpy(0.7, x, y1);
  kernels::reference::axpy(0.7, x, y2);
  CHECK(y1 == y2);
  kernels::xpby(x, -1.3, y1);
  kernels::reference::xpby(x, -1.3, y2);
  CHECK(y1 == y2);
  std::vector<double> o1(n), o2(n);
  kernels::multiply(x, y1, o1);
  kernels::reference::multiply(x, y1, o2);
  CHECK(o1 == o2);
}

TEST_CASE("exponential terms: values, potential, energy and overflow index") {
  Rng rng(3);
  const std::size_t n = 3000;
  std::vector<double> f(n), a(n), b(n);
  for (std::size_t i = 0; i < n; ++i) {
    f[i] = rng.uniform(-2, 2);
    a[i] = rng.uniform(0, 3);
    b[i] = rng.uniform(0, 3);
  }
  const kernels::ExpTerm terms[] = {{a, 2.0}, {b, -1.5}};
  std::vector<double> v(n), p(n), e(n), v2(n), p2(n), e2(n);
  CHECK(kernels::evaluate_exp_terms(f, terms, 700.0, {v, p, e}) == kernels::kNoOverflow);
  CHECK(kernels::reference::evaluate_exp_terms(f, terms, 700.0, {v2, p2, e2}) == kernels::kNoOverflow);
  CHECK(v == v2);
  CHECK(p == p2);
  CHECK(e == e2);
  for (std::size_t i = 0; i < n; i += 97) {
    const double ea = a[i] * std::exp(2.0 * f[i]);
    const double eb = b[i] * std::exp(-1.5 * f[i]);
    CHECK(v[i] == doctest::Approx(ea - eb).epsilon(1e-14));
    CHECK(p[i] == doctest::Approx(2.0 * ea + 1.5 * eb).epsilon(1e-14));
    CHECK(e[i] == doctest::Approx(ea / 2.0 + eb / 1.5).epsilon(1e-14));
  }
  f[1234] = 400.0;
  f[2000] = 500.0;
  CHECK(kernels::evaluate_exp_terms(f, terms, 700.0, {v, {}, {}}) == 1234);
  CHECK(kernels::reference::evaluate_exp_terms(f, terms, 700.0, {v, {}, {}}) == 1234);
}
