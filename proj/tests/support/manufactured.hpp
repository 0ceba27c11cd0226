#pragma once

#include <cmath>

#include "oracles.hpp"
#include "vortexlab/kw/problem.hpp"

namespace vortexlab::testing {

/// f* = 0.3 sin(2 pi x) cos(2 pi y) on the unit torus.
inline ScalarField manufactured_profile(const GridSpec& grid) {
  return ScalarField::from_function(TorusGeometry::unit(), grid, [](double x, double y) {
    return 0.3 * std::sin(2 * kPi * x) * std::cos(2 * kPi * y);
  });
}

/// A = B = 1, alpha = beta = 1 and w chosen (from the closed-form Laplacian
/// -8 pi^2 f*) so that f* solves the problem exactly.
inline kw::KWProblem manufactured_problem(double eps, const GridSpec& grid) {
  const auto geometry = TorusGeometry::unit();
  const ScalarField fstar = manufactured_profile(grid);
  const ScalarField one = ScalarField::constant(geometry, grid, 1.0);
  ScalarField w(geometry, grid);
  for (std::size_t k = 0; k < w.size(); ++k) {
    const double f = fstar[k];
    w[k] = -(eps * 8 * kPi * kPi * f + std::exp(f) - std::exp(-f));
  }
  return kw::KWProblem(eps, {{one, 1.0}}, {{one, 1.0}}, w);
}

}  // namespace vortexlab::testing
