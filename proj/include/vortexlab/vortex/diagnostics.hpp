#pragma once

#include <functional>
#include <span>

#include "vortexlab/vortex/specs.hpp"

namespace vortexlab::vortex {

struct BumpRadii {
  double r_inner;
  double r_outer;
};

/// (3 eps + 4h, 6 eps + 8h), clamped so that the outer disc stays inside half
/// the distance to the nearest other point and inside 0.45 min(lx, ly). When
/// the clamp crosses the inner radius the inner radius becomes r_outer / 2.
BumpRadii default_bump_radii(double epsilon, const TorusGeometry& geometry, const GridSpec& grid,
                             Point center, std::span<const Point> others);

/// Integral of bump * density / 2 pi for the smooth-step bump around `center`.
/// OverlappingBump if a point of `others` lies within r_outer of the center;
/// BadRadii for invalid radii.
double curvature_mass(const ScalarField& curvature_density, Point center, double r_inner,
                      double r_outer, std::span<const Point> others = {});

struct OrderFitOptions {
  int n_radii = 16;
  int n_angles = 64;
};

/// Least-squares slope of the circle average of log sqrt(phi_sq) against
/// log r, over radii log-spaced in [r_min, r_max]. Samples come from the
/// trigonometric interpolant. InvalidArgument if r_min is below two grid
/// cells or the radii are out of order; DegenerateFit when fewer than two
/// radii have a positive density on the whole circle.
double vanishing_order_fit(const ScalarField& phi_sq, Point center, double r_min, double r_max,
                           const OrderFitOptions& options = {});
/// Same fit for a density given pointwise.
double vanishing_order_fit(const std::function<double(Point)>& phi_sq,
                           const TorusGeometry& geometry, Point center, double r_min,
                           double r_max, const OrderFitOptions& options = {});

struct IdentityResiduals {
  /// Classical: int(1 - |phi|^2) - 2 pi d eps^2.
  /// Mixed/generalized: int iLF - 2 pi d (the integrated curvature).
  double bradlow;
  /// Integrated field equation: sum_j k_j ||phi_j||^2 + tau Vol + 2 pi d eps^2
  /// (classical: k = 1, tau = -1, which is -bradlow).
  double identity;
  /// int iLF / 2 pi - d.
  double chern;
};

IdentityResiduals integral_identities(const ReducedModel& model, const Reconstruction& fields);

}  // namespace vortexlab::vortex
