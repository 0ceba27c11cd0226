#include "vortexlab/torus/cutoff.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "vortexlab/error.hpp"

namespace vortexlab::torus {

namespace {

// log(e^a + e^b)
double log_add_exp(double a, double b) noexcept {
  const double hi = std::max(a, b);
  return hi + std::log1p(std::exp(std::min(a, b) - hi));
}

// log s(t) and log s'(t) for t in (0, 1).
double log_step(double t) noexcept { return -1.0 / t - log_add_exp(-1.0 / t, -1.0 / (1.0 - t)); }

double log_step_derivative(double t) noexcept {
  const double a = -1.0 / t;
  const double b = -1.0 / (1.0 - t);
  const double weight = 1.0 / (t * t) + 1.0 / ((1.0 - t) * (1.0 - t));
  return a + b + std::log(weight) - 2.0 * log_add_exp(a, b);
}

}  // namespace

double smooth_step(double t) noexcept {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  return std::exp(log_step(t));
}

double smooth_step_derivative(double t) noexcept {
  if (t <= 0.0 || t >= 1.0) return 0.0;
  return std::exp(log_step_derivative(t));
}

BumpCutoff::BumpCutoff(const TorusGeometry& geometry, Point center, double r_inner,
                       double r_outer)
    : geometry_(geometry), center_(geometry.reduce(center)), r_inner_(r_inner), r_outer_(r_outer) {
  if (!(r_inner > 0.0 && r_inner < r_outer && r_outer < 0.5 * geometry.min_length())) {
    throw Error(ErrorKind::BadRadii,
                "need 0 < r_inner < r_outer < min(lx, ly)/2, got r_inner=" +
                    std::to_string(r_inner) + ", r_outer=" + std::to_string(r_outer));
  }
}

double BumpCutoff::transition(Point p) const noexcept {
  return (r_outer_ - geometry_.distance(center_, p)) / (r_outer_ - r_inner_);
}

double BumpCutoff::value(Point p) const noexcept { return smooth_step(transition(p)); }

double BumpCutoff::gradient_norm(Point p) const noexcept {
  return smooth_step_derivative(transition(p)) / (r_outer_ - r_inner_);
}

double BumpCutoff::log_gradient_ratio(Point p, double alpha) const noexcept {
  const double t = transition(p);
  if (t <= 0.0 || t >= 1.0) return -std::numeric_limits<double>::infinity();
  return 2.0 * log_step_derivative(t) - 2.0 * std::log(r_outer_ - r_inner_) -
         alpha * log_step(t);
}

ScalarField BumpCutoff::sample(const GridSpec& grid) const {
  ScalarField out(geometry_, grid);
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = value(out.point(k));
  return out;
}

double BumpCutoff::gradient_ratio_sup(const GridSpec& grid, double alpha) const {
  ScalarField probe(geometry_, grid);
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < probe.size(); ++k) {
    best = std::max(best, log_gradient_ratio(probe.point(k), alpha));
  }
  return std::exp(best);
}

ScalarField bump_cutoff(const TorusGeometry& geometry, const GridSpec& grid, Point center,
                        double r_inner, double r_outer) {
  return BumpCutoff(geometry, center, r_inner, r_outer).sample(grid);
}

}  // namespace vortexlab::torus
