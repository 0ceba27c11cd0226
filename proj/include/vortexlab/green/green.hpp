#pragma once

// Green's function of the flat Laplacian on a rectangular torus:
//
//   G(x, y) = (1/2pi) [ log|theta1(z | i ly/lx)| - pi y^2 / (lx ly) ],  z = (x + i y) / lx,
//
// with (x, y) first reduced to the centred fundamental cell. It satisfies
// laplacian G = delta_0 - 1/Vol and G ~ (1/2pi) log r near the origin.

#include "vortexlab/torus/geometry.hpp"

namespace vortexlab::green {

/// Value returned at points of the period lattice (where G = -inf).
inline constexpr double kSingularGreen = -1e29;

/// Throws BadTau if ly/lx < 0.1.
double torus_green(torus::Point point, const torus::TorusGeometry& geometry);

struct GreenGradient {
  double dx = 0.0;
  double dy = 0.0;
};

/// Closed-form gradient; zero at lattice points.
GreenGradient torus_green_gradient(torus::Point point, const torus::TorusGeometry& geometry);

}  // namespace vortexlab::green
