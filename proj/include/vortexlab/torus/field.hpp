#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "vortexlab/torus/geometry.hpp"

namespace vortexlab::torus {

/// Real samples on the periodic grid. Sample (i, j) sits at
/// (i * length_x / nx, j * length_y / ny) and is stored at j * nx + i,
/// i.e. rows of constant y.
class ScalarField {
 public:
  ScalarField(const TorusGeometry& geometry, const GridSpec& grid);
  ScalarField(const TorusGeometry& geometry, const GridSpec& grid, std::vector<double> values);

  static ScalarField constant(const TorusGeometry& geometry, const GridSpec& grid, double value);

  template <class Function>
  static ScalarField from_function(const TorusGeometry& geometry, const GridSpec& grid,
                                   Function&& function) {
    ScalarField field(geometry, grid);
    for (std::size_t j = 0; j < grid.ny(); ++j) {
      for (std::size_t i = 0; i < grid.nx(); ++i) {
        const Point p = field.point(i, j);
        field(i, j) = function(p.x, p.y);
      }
    }
    return field;
  }

  const TorusGeometry& geometry() const noexcept { return geometry_; }
  const GridSpec& grid() const noexcept { return grid_; }
  std::size_t size() const noexcept { return values_.size(); }

  std::span<double> values() noexcept { return values_; }
  std::span<const double> values() const noexcept { return values_; }

  std::size_t index(std::size_t i, std::size_t j) const noexcept { return j * grid_.nx() + i; }
  double& operator()(std::size_t i, std::size_t j) noexcept { return values_[index(i, j)]; }
  double operator()(std::size_t i, std::size_t j) const noexcept { return values_[index(i, j)]; }
  double& operator[](std::size_t k) noexcept { return values_[k]; }
  double operator[](std::size_t k) const noexcept { return values_[k]; }

  Point point(std::size_t i, std::size_t j) const noexcept;
  Point point(std::size_t k) const noexcept { return point(k % grid_.nx(), k / grid_.nx()); }

  bool compatible(const ScalarField& other) const noexcept {
    return geometry_ == other.geometry_ && grid_ == other.grid_;
  }
  /// Throws IncompatibleFields naming `context` if geometry or grid differ.
  void require_compatible(const ScalarField& other, std::string_view context) const;

  double min() const;
  double max() const;
  double mean() const;
  bool all_finite() const noexcept;

  ScalarField& operator+=(const ScalarField& other);
  ScalarField& operator-=(const ScalarField& other);
  ScalarField& operator*=(const ScalarField& other);
  ScalarField& operator+=(double c) noexcept;
  ScalarField& operator*=(double c) noexcept;

  friend ScalarField operator+(ScalarField a, const ScalarField& b) { return a += b; }
  friend ScalarField operator-(ScalarField a, const ScalarField& b) { return a -= b; }
  friend ScalarField operator*(ScalarField a, const ScalarField& b) { return a *= b; }
  friend ScalarField operator*(double c, ScalarField a) { return a *= c; }
  friend ScalarField operator*(ScalarField a, double c) { return a *= c; }
  friend ScalarField operator+(ScalarField a, double c) { return a += c; }
  friend ScalarField operator-(ScalarField a, double c) { return a += -c; }

  template <class Op>
  ScalarField map(Op&& op) const {
    ScalarField out(geometry_, grid_);
    for (std::size_t k = 0; k < values_.size(); ++k) out.values_[k] = op(values_[k]);
    return out;
  }

 private:
  TorusGeometry geometry_;
  GridSpec grid_;
  std::vector<double> values_;
};

/// Sample weights in [0, 1] selecting a region of the torus.
class RegionMask {
 public:
  RegionMask(const TorusGeometry& geometry, const GridSpec& grid, std::vector<double> weights);

  static RegionMask full(const TorusGeometry& geometry, const GridSpec& grid);
  /// Weight 1 outside every disc of `radius` around `centers`, 0 inside.
  static RegionMask excluding_discs(const TorusGeometry& geometry, const GridSpec& grid,
                                    std::span<const Point> centers, double radius);

  const TorusGeometry& geometry() const noexcept { return geometry_; }
  const GridSpec& grid() const noexcept { return grid_; }
  std::span<const double> weights() const noexcept { return weights_; }
  double operator[](std::size_t k) const noexcept { return weights_[k]; }

  /// mean(weights) * volume
  double area() const;
  /// Weights multiplied sample by sample.
  RegionMask intersect(const RegionMask& other) const;

  void require_compatible(const ScalarField& field, std::string_view context) const;

 private:
  TorusGeometry geometry_;
  GridSpec grid_;
  std::vector<double> weights_;
};

/// Description of a region that can be rasterised on any grid of a geometry.
struct DiscExclusion {
  std::vector<Point> centers;
  double radius = 0.0;

  RegionMask rasterize(const TorusGeometry& geometry, const GridSpec& grid) const {
    return RegionMask::excluding_discs(geometry, grid, centers, radius);
  }
};

}  // namespace vortexlab::torus
