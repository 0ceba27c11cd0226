#include "vortexlab/torus/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "vortexlab/error.hpp"

namespace vortexlab::torus {

namespace {

double wrap(double v, double period) noexcept {
  double r = std::fmod(v, period);
  if (r < 0.0) r += period;
  if (r >= period) r = 0.0;  // fmod of tiny negatives can round up to the period
  return r;
}

double centered(double v, double period) noexcept {
  double r = wrap(v, period);
  if (r >= 0.5 * period) r -= period;
  return r;
}

}  // namespace

TorusGeometry::TorusGeometry(double length_x, double length_y)
    : length_x_(length_x), length_y_(length_y) {
  if (!(length_x > 0.0) || !(length_y > 0.0) || !std::isfinite(length_x) ||
      !std::isfinite(length_y)) {
    throw Error(ErrorKind::InvalidArgument, "torus side lengths must be positive and finite");
  }
}

double TorusGeometry::min_length() const noexcept { return std::min(length_x_, length_y_); }

Point TorusGeometry::reduce(Point p) const noexcept {
  return {wrap(p.x, length_x_), wrap(p.y, length_y_)};
}

Point TorusGeometry::displacement(Point from, Point to) const noexcept {
  return {centered(to.x - from.x, length_x_), centered(to.y - from.y, length_y_)};
}

double TorusGeometry::distance(Point a, Point b) const noexcept {
  const Point d = displacement(a, b);
  return std::hypot(d.x, d.y);
}

GridSpec::GridSpec(std::size_t nx, std::size_t ny) : nx_(nx), ny_(ny) {
  if (nx < 8 || ny < 8 || nx % 2 != 0 || ny % 2 != 0) {
    throw Error(ErrorKind::InvalidArgument,
                "grid must be even and at least 8 in each direction, got " + std::to_string(nx) +
                    "x" + std::to_string(ny));
  }
}

double grid_spacing(const TorusGeometry& geometry, const GridSpec& grid) noexcept {
  return std::max(geometry.length_x() / static_cast<double>(grid.nx()),
                  geometry.length_y() / static_cast<double>(grid.ny()));
}

}  // namespace vortexlab::torus
