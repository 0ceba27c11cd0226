#pragma once

#include <cstddef>

namespace vortexlab::torus {

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

/// Flat rectangular torus R^2 / (length_x Z x length_y Z).
class TorusGeometry {
 public:
  TorusGeometry(double length_x, double length_y);

  static TorusGeometry unit() { return TorusGeometry(1.0, 1.0); }

  double length_x() const noexcept { return length_x_; }
  double length_y() const noexcept { return length_y_; }
  double volume() const noexcept { return length_x_ * length_y_; }
  double min_length() const noexcept;

  /// Representative of p in [0, length_x) x [0, length_y).
  Point reduce(Point p) const noexcept;
  /// Shortest periodic displacement to - from, components in [-l/2, l/2).
  Point displacement(Point from, Point to) const noexcept;
  double distance(Point a, Point b) const noexcept;

  friend bool operator==(const TorusGeometry&, const TorusGeometry&) = default;

 private:
  double length_x_;
  double length_y_;
};

/// Samples per period. Both counts are even and at least 8.
class GridSpec {
 public:
  GridSpec(std::size_t nx, std::size_t ny);
  static GridSpec square(std::size_t n) { return GridSpec(n, n); }

  std::size_t nx() const noexcept { return nx_; }
  std::size_t ny() const noexcept { return ny_; }
  std::size_t size() const noexcept { return nx_ * ny_; }
  /// Number of complex coefficients in the half spectrum of a real field.
  std::size_t spectrum_size() const noexcept { return ny_ * (nx_ / 2 + 1); }

  friend bool operator==(const GridSpec&, const GridSpec&) = default;

 private:
  std::size_t nx_;
  std::size_t ny_;
};

/// Largest sample spacing of `grid` on `geometry`.
double grid_spacing(const TorusGeometry& geometry, const GridSpec& grid) noexcept;

}  // namespace vortexlab::torus
