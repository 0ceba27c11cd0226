#pragma once

#include <cstddef>
#include <vector>

#include "vortexlab/torus/field.hpp"

namespace vortexlab::green {

struct DivisorPoint {
  torus::Point point;
  int multiplicity = 0;
  friend bool operator==(const DivisorPoint&, const DivisorPoint&) = default;
};

/// D = sum m_k x_k on a torus. Points are stored reduced to the fundamental
/// cell; they must be pairwise distinct and every m_k nonzero (InvalidDivisor).
class Divisor {
 public:
  explicit Divisor(const torus::TorusGeometry& geometry) : geometry_(geometry) {}
  Divisor(const torus::TorusGeometry& geometry, std::vector<DivisorPoint> points);

  const torus::TorusGeometry& geometry() const noexcept { return geometry_; }
  const std::vector<DivisorPoint>& points() const noexcept { return points_; }
  std::size_t size() const noexcept { return points_.size(); }
  bool empty() const noexcept { return points_.empty(); }
  const DivisorPoint& operator[](std::size_t k) const noexcept { return points_[k]; }

  int degree() const noexcept;
  bool effective() const noexcept;
  std::vector<torus::Point> support() const;

  /// Points with m_k > 0.
  Divisor positive_part() const;
  /// Points with m_k < 0, multiplicities kept negative.
  Divisor negative_part() const;
  Divisor negated() const;
  /// Formal sum; coinciding points merge and cancelling points drop out.
  Divisor plus(const Divisor& other) const;
  Divisor translated(torus::Point shift) const;

  /// Smallest periodic distance between two distinct points (infinity if fewer than two).
  double min_separation() const;
  /// Distance from p to the nearest point of the support (infinity if empty).
  double distance_to_support(torus::Point p) const;

  friend bool operator==(const Divisor&, const Divisor&) = default;

 private:
  torus::TorusGeometry geometry_;
  std::vector<DivisorPoint> points_;
};

/// Regular samples of u_D = sum 4 pi m_k G(x - x_k). Samples that coincide
/// exactly with a divisor point carry 4 pi m_k * kSingularGreen.
struct DivisorPotential {
  Divisor divisor;
  torus::ScalarField u;
};

/// u_D at an arbitrary point.
double divisor_potential_at(const Divisor& divisor, torus::Point point);

/// `recenter` subtracts the sample mean of u_D.
DivisorPotential divisor_potential(const Divisor& divisor, const torus::GridSpec& grid,
                                   bool recenter = false);

/// scale * exp(u_D); exactly zero at divisor samples. Throws MixedSignDivisor
/// unless the divisor is effective, NonPositiveInput unless scale > 0.
torus::ScalarField vanishing_density(const DivisorPotential& potential, double scale);

}  // namespace vortexlab::green
