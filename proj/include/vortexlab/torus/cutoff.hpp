#pragma once

// Radial cutoff functions: 1 on a disc, 0 outside a larger disc, C-infinity
// in between. In the transition variable t = (r_outer - dist) / (r_outer - r_inner)
// the profile is the smooth step
//
//   s(t) = e^{-1/t} / (e^{-1/t} + e^{-1/(1-t)}),
//
// which behaves like e^{-1/t} as t -> 0 (the outer edge) and is flat to all
// orders at both edges.

#include "vortexlab/torus/field.hpp"

namespace vortexlab::torus {

/// s(t) above; 0 for t <= 0 and 1 for t >= 1.
double smooth_step(double t) noexcept;
/// ds/dt.
double smooth_step_derivative(double t) noexcept;

class BumpCutoff {
 public:
  /// Throws BadRadii unless 0 < r_inner < r_outer < min(lx, ly) / 2.
  BumpCutoff(const TorusGeometry& geometry, Point center, double r_inner, double r_outer);

  double value(Point p) const noexcept;
  /// |grad phi| from the closed form.
  double gradient_norm(Point p) const noexcept;
  /// log(|grad phi|^2 / phi^alpha), evaluated in log space so that it stays
  /// finite deep in the exponentially small tail; -inf where the gradient is 0.
  double log_gradient_ratio(Point p, double alpha) const noexcept;

  ScalarField sample(const GridSpec& grid) const;

  /// Largest |grad phi|^2 / phi^alpha over the samples of `grid`.
  double gradient_ratio_sup(const GridSpec& grid, double alpha) const;

  Point center() const noexcept { return center_; }
  double r_inner() const noexcept { return r_inner_; }
  double r_outer() const noexcept { return r_outer_; }

 private:
  double transition(Point p) const noexcept;

  TorusGeometry geometry_;
  Point center_;
  double r_inner_;
  double r_outer_;
};

ScalarField bump_cutoff(const TorusGeometry& geometry, const GridSpec& grid, Point center,
                        double r_inner, double r_outer);

}  // namespace vortexlab::torus
