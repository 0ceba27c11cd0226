#include "vortexlab/torus/field.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "vortexlab/error.hpp"
#include "vortexlab/kernels/pointwise.hpp"

namespace vortexlab::torus {

ScalarField::ScalarField(const TorusGeometry& geometry, const GridSpec& grid)
    : geometry_(geometry), grid_(grid), values_(grid.size(), 0.0) {}

ScalarField::ScalarField(const TorusGeometry& geometry, const GridSpec& grid,
                         std::vector<double> values)
    : geometry_(geometry), grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.size()) {
    throw Error(ErrorKind::InvalidArgument, "field has " + std::to_string(values_.size()) +
                                                " values, grid needs " +
                                                std::to_string(grid_.size()));
  }
}

ScalarField ScalarField::constant(const TorusGeometry& geometry, const GridSpec& grid,
                                  double value) {
  return ScalarField(geometry, grid, std::vector<double>(grid.size(), value));
}

Point ScalarField::point(std::size_t i, std::size_t j) const noexcept {
  return {static_cast<double>(i) * geometry_.length_x() / static_cast<double>(grid_.nx()),
          static_cast<double>(j) * geometry_.length_y() / static_cast<double>(grid_.ny())};
}

void ScalarField::require_compatible(const ScalarField& other, std::string_view context) const {
  if (!compatible(other)) {
    throw Error(ErrorKind::IncompatibleFields,
                std::string(context) + ": geometry or grid mismatch (" +
                    std::to_string(grid_.nx()) + "x" + std::to_string(grid_.ny()) + " vs " +
                    std::to_string(other.grid_.nx()) + "x" + std::to_string(other.grid_.ny()) +
                    ")");
  }
}

double ScalarField::min() const { return *std::min_element(values_.begin(), values_.end()); }
double ScalarField::max() const { return *std::max_element(values_.begin(), values_.end()); }

double ScalarField::mean() const {
  return kernels::blocked_sum(values_) / static_cast<double>(values_.size());
}

bool ScalarField::all_finite() const noexcept {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

ScalarField& ScalarField::operator+=(const ScalarField& other) {
  require_compatible(other, "field addition");
  kernels::axpy(1.0, other.values_, values_);
  return *this;
}

ScalarField& ScalarField::operator-=(const ScalarField& other) {
  require_compatible(other, "field subtraction");
  kernels::axpy(-1.0, other.values_, values_);
  return *this;
}

ScalarField& ScalarField::operator*=(const ScalarField& other) {
  require_compatible(other, "field multiplication");
  kernels::multiply(values_, other.values_, values_);
  return *this;
}

ScalarField& ScalarField::operator+=(double c) noexcept {
  for (double& v : values_) v += c;
  return *this;
}

ScalarField& ScalarField::operator*=(double c) noexcept {
  for (double& v : values_) v *= c;
  return *this;
}

RegionMask::RegionMask(const TorusGeometry& geometry, const GridSpec& grid,
                       std::vector<double> weights)
    : geometry_(geometry), grid_(grid), weights_(std::move(weights)) {
  if (weights_.size() != grid_.size()) {
    throw Error(ErrorKind::InvalidArgument, "mask size does not match grid");
  }
  for (double w : weights_) {
    if (!(w >= 0.0 && w <= 1.0)) {
      throw Error(ErrorKind::InvalidArgument, "mask weights must lie in [0, 1]");
    }
  }
}

RegionMask RegionMask::full(const TorusGeometry& geometry, const GridSpec& grid) {
  return RegionMask(geometry, grid, std::vector<double>(grid.size(), 1.0));
}

RegionMask RegionMask::excluding_discs(const TorusGeometry& geometry, const GridSpec& grid,
                                       std::span<const Point> centers, double radius) {
  ScalarField probe(geometry, grid);
  std::vector<double> weights(grid.size(), 1.0);
  for (std::size_t k = 0; k < weights.size(); ++k) {
    const Point p = probe.point(k);
    for (const Point& c : centers) {
      if (geometry.distance(p, c) < radius) {
        weights[k] = 0.0;
        break;
      }
    }
  }
  return RegionMask(geometry, grid, std::move(weights));
}

double RegionMask::area() const {
  return kernels::blocked_sum(weights_) / static_cast<double>(weights_.size()) *
         geometry_.volume();
}

RegionMask RegionMask::intersect(const RegionMask& other) const {
  if (!(geometry_ == other.geometry_ && grid_ == other.grid_)) {
    throw Error(ErrorKind::IncompatibleFields, "mask intersection: geometry or grid mismatch");
  }
  std::vector<double> w(weights_.size());
  for (std::size_t k = 0; k < w.size(); ++k) w[k] = weights_[k] * other.weights_[k];
  return RegionMask(geometry_, grid_, std::move(w));
}

void RegionMask::require_compatible(const ScalarField& field, std::string_view context) const {
  if (!(geometry_ == field.geometry() && grid_ == field.grid())) {
    throw Error(ErrorKind::IncompatibleFields,
                std::string(context) + ": mask and field live on different grids");
  }
}

}  // namespace vortexlab::torus
