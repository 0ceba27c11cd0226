#include "vortexlab/green/divisor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "vortexlab/error.hpp"
#include "vortexlab/green/green.hpp"
#include "vortexlab/kernels/pointwise.hpp"

namespace vortexlab::green {

namespace {

constexpr double kCoincidence = 1e-12;

}  // namespace

Divisor::Divisor(const torus::TorusGeometry& geometry, std::vector<DivisorPoint> points)
    : geometry_(geometry), points_(std::move(points)) {
  for (auto& p : points_) {
    if (!std::isfinite(p.point.x) || !std::isfinite(p.point.y)) {
      throw Error(ErrorKind::InvalidDivisor, "divisor point coordinates must be finite");
    }
    if (p.multiplicity == 0) throw Error(ErrorKind::InvalidDivisor, "multiplicity must be nonzero");
    p.point = geometry_.reduce(p.point);
  }
  for (std::size_t a = 0; a < points_.size(); ++a) {
    for (std::size_t b = a + 1; b < points_.size(); ++b) {
      if (geometry_.distance(points_[a].point, points_[b].point) < kCoincidence) {
        throw Error(ErrorKind::InvalidDivisor,
                    "divisor points " + std::to_string(a) + " and " + std::to_string(b) +
                        " coincide modulo periods");
      }
    }
  }
}

int Divisor::degree() const noexcept {
  int d = 0;
  for (const auto& p : points_) d += p.multiplicity;
  return d;
}

bool Divisor::effective() const noexcept {
  return std::all_of(points_.begin(), points_.end(), [](const auto& p) { return p.multiplicity > 0; });
}

std::vector<torus::Point> Divisor::support() const {
  std::vector<torus::Point> out;
  for (const auto& p : points_) out.push_back(p.point);
  return out;
}

Divisor Divisor::positive_part() const {
  std::vector<DivisorPoint> out;
  for (const auto& p : points_) if (p.multiplicity > 0) out.push_back(p);
  return Divisor(geometry_, std::move(out));
}

Divisor Divisor::negative_part() const {
  std::vector<DivisorPoint> out;
  for (const auto& p : points_) if (p.multiplicity < 0) out.push_back(p);
  return Divisor(geometry_, std::move(out));
}

Divisor Divisor::negated() const {
  std::vector<DivisorPoint> out = points_;
  for (auto& p : out) p.multiplicity = -p.multiplicity;
  return Divisor(geometry_, std::move(out));
}

Divisor Divisor::plus(const Divisor& other) const {
  if (!(geometry_ == other.geometry_)) {
    throw Error(ErrorKind::IncompatibleFields, "divisors live on different tori");
  }
  std::vector<DivisorPoint> out = points_;
  for (const auto& q : other.points_) {
    auto it = std::find_if(out.begin(), out.end(), [&](const DivisorPoint& p) {
      return geometry_.distance(p.point, q.point) < kCoincidence;
    });
    if (it == out.end()) {
      out.push_back(q);
    } else {
      it->multiplicity += q.multiplicity;
    }
  }
  std::erase_if(out, [](const DivisorPoint& p) { return p.multiplicity == 0; });
  return Divisor(geometry_, std::move(out));
}

Divisor Divisor::translated(torus::Point shift) const {
  std::vector<DivisorPoint> out = points_;
  for (auto& p : out) p.point = {p.point.x + shift.x, p.point.y + shift.y};
  return Divisor(geometry_, std::move(out));
}

double Divisor::min_separation() const {
  double m = std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < points_.size(); ++a) {
    for (std::size_t b = a + 1; b < points_.size(); ++b) {
      m = std::min(m, geometry_.distance(points_[a].point, points_[b].point));
    }
  }
  return m;
}

double Divisor::distance_to_support(torus::Point p) const {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& q : points_) m = std::min(m, geometry_.distance(p, q.point));
  return m;
}

double divisor_potential_at(const Divisor& divisor, torus::Point point) {
  double u = 0.0;
  for (const auto& p : divisor.points()) {
    const torus::Point d{point.x - p.point.x, point.y - p.point.y};
    u += 4.0 * std::numbers::pi * p.multiplicity * torus_green(d, divisor.geometry());
  }
  return u;
}

DivisorPotential divisor_potential(const Divisor& divisor, const torus::GridSpec& grid,
                                   bool recenter) {
  torus::ScalarField u(divisor.geometry(), grid);
  if (!divisor.empty()) {
    // Surface geometry errors here rather than inside the parallel loop.
    (void)torus_green({0.5 * divisor.geometry().length_x(), 0.0}, divisor.geometry());
    const auto n = static_cast<std::ptrdiff_t>(u.size());
#pragma omp parallel for schedule(static) num_threads(kernels::thread_count())
    for (std::ptrdiff_t k = 0; k < n; ++k) {
      const auto idx = static_cast<std::size_t>(k);
      u[idx] = divisor_potential_at(divisor, u.point(idx));
    }
  }
  if (recenter && !divisor.empty()) {
    // Mean over regular samples only; sentinels would swamp it.
    double sum = 0.0;
    std::size_t count = 0;
    for (std::size_t k = 0; k < u.size(); ++k) {
      if (std::abs(u[k]) < 1e20) {
        sum += u[k];
        ++count;
      }
    }
    const double shift = count > 0 ? sum / static_cast<double>(count) : 0.0;
    for (std::size_t k = 0; k < u.size(); ++k) {
      if (std::abs(u[k]) < 1e20) u[k] -= shift;
    }
  }
  return {divisor, std::move(u)};
}

torus::ScalarField vanishing_density(const DivisorPotential& potential, double scale) {
  if (!potential.divisor.effective()) {
    throw Error(ErrorKind::MixedSignDivisor,
                "vanishing densities need an effective divisor; split it into positive and "
                "negative parts first");
  }
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    throw Error(ErrorKind::NonPositiveInput, "density scale must be positive");
  }
  return potential.u.map([scale](double u) { return scale * std::exp(u); });
}

}  // namespace vortexlab::green
