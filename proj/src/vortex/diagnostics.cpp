#include "vortexlab/vortex/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "vortexlab/error.hpp"
#include "vortexlab/torus/cutoff.hpp"
#include "vortexlab/torus/quadrature.hpp"
#include "vortexlab/torus/spectral.hpp"

namespace vortexlab::vortex {

namespace {

constexpr double kPi = std::numbers::pi;

double nearest(const TorusGeometry& geometry, Point center, std::span<const Point> others) {
  double d = std::numeric_limits<double>::infinity();
  for (const Point& q : others) {
    const double r = geometry.distance(center, q);
    if (r > 1e-12) d = std::min(d, r);
  }
  return d;
}

double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxy / sxx;
}

double order_fit_impl(const std::function<double(Point)>& phi_sq, const TorusGeometry& geometry,
                      Point center, double r_min, double r_max, const OrderFitOptions& options) {
  if (!(r_min > 0.0 && r_max > r_min && r_max < 0.5 * geometry.min_length())) {
    throw Error(ErrorKind::InvalidArgument,
                "order fit needs 0 < r_min < r_max < min(lx, ly)/2, got r_min=" +
                    std::to_string(r_min) + ", r_max=" + std::to_string(r_max));
  }
  if (options.n_radii < 2 || options.n_angles < 1) {
    throw Error(ErrorKind::InvalidArgument, "order fit needs at least two radii and one angle");
  }
  std::vector<double> log_r;
  std::vector<double> log_phi;
  for (int i = 0; i < options.n_radii; ++i) {
    const double r =
        r_min * std::pow(r_max / r_min, static_cast<double>(i) / (options.n_radii - 1));
    double sum = 0.0;
    bool ok = true;
    for (int a = 0; a < options.n_angles && ok; ++a) {
      const double theta = 2.0 * kPi * (a + 0.5) / options.n_angles;
      const double v = phi_sq({center.x + r * std::cos(theta), center.y + r * std::sin(theta)});
      if (!(v > 0.0) || !std::isfinite(v)) {
        ok = false;
      } else {
        sum += 0.5 * std::log(v);
      }
    }
    if (!ok) continue;
    log_r.push_back(std::log(r));
    log_phi.push_back(sum / options.n_angles);
  }
  if (log_r.size() < 2) {
    throw Error(ErrorKind::DegenerateFit,
                "density vanishes or underflows at the probe radii; no slope to fit");
  }
  return fit_slope(log_r, log_phi);
}

}  // namespace

BumpRadii default_bump_radii(double epsilon, const TorusGeometry& geometry, const GridSpec& grid,
                             Point center, std::span<const Point> others) {
  const double h = torus::grid_spacing(geometry, grid);
  double r_inner = 3.0 * epsilon + 4.0 * h;
  double r_outer = 6.0 * epsilon + 8.0 * h;
  const double cap =
      std::min(0.45 * geometry.min_length(), 0.5 * nearest(geometry, center, others));
  if (r_outer > cap) r_outer = cap;
  if (r_inner >= r_outer) r_inner = 0.5 * r_outer;
  return {r_inner, r_outer};
}

double curvature_mass(const ScalarField& curvature_density, Point center, double r_inner,
                      double r_outer, std::span<const Point> others) {
  const TorusGeometry& geometry = curvature_density.geometry();
  for (const Point& q : others) {
    const double r = geometry.distance(center, q);
    if (r > 1e-12 && r <= r_outer) {
      throw Error(ErrorKind::OverlappingBump,
                  "another divisor point lies at distance " + std::to_string(r) +
                      " <= r_outer = " + std::to_string(r_outer));
    }
  }
  const torus::BumpCutoff bump(geometry, center, r_inner, r_outer);
  return torus::inner_product(bump.sample(curvature_density.grid()), curvature_density) /
         (2.0 * kPi);
}

double vanishing_order_fit(const ScalarField& phi_sq, Point center, double r_min, double r_max,
                           const OrderFitOptions& options) {
  const double h = torus::grid_spacing(phi_sq.geometry(), phi_sq.grid());
  if (r_min < 2.0 * h * (1.0 - 1e-12)) {
    throw Error(ErrorKind::InvalidArgument, "r_min must be at least two grid cells (" +
                                                std::to_string(2.0 * h) + ")");
  }
  return order_fit_impl([&](Point p) { return torus::sample_at(phi_sq, p); }, phi_sq.geometry(),
                        center, r_min, r_max, options);
}

double vanishing_order_fit(const std::function<double(Point)>& phi_sq,
                           const TorusGeometry& geometry, Point center, double r_min,
                           double r_max, const OrderFitOptions& options) {
  return order_fit_impl(phi_sq, geometry, center, r_min, r_max, options);
}

IdentityResiduals integral_identities(const ReducedModel& model, const Reconstruction& fields) {
  const double eps2 = model.epsilon * model.epsilon;
  const double vol = model.geometry.volume();
  const double flux = torus::integrate(fields.curvature);
  IdentityResiduals out{};
  out.chern = flux / (2.0 * kPi) - model.degree;
  double weighted = 0.0;
  for (std::size_t j = 0; j < model.sections.size(); ++j) {
    weighted += model.sections[j].weight * torus::integrate(fields.phi_sq[j]);
  }
  out.identity = weighted + model.tau * vol + 2.0 * kPi * model.degree * eps2;
  if (model.kind == VortexKind::Classical) {
    out.bradlow = vol - torus::integrate(fields.phi_sq_total) - 2.0 * kPi * model.degree * eps2;
  } else {
    out.bradlow = flux - 2.0 * kPi * model.degree;
  }
  return out;
}

}  // namespace vortexlab::vortex
