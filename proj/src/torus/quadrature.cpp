#include "vortexlab/torus/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "vortexlab/error.hpp"
#include "vortexlab/kernels/pointwise.hpp"

namespace vortexlab::torus {

namespace {

void require_area(const RegionMask& mask) {
  if (!(mask.area() > 0.0)) throw Error(ErrorKind::EmptyMask, "region mask has zero area");
}

}  // namespace

double integrate(const ScalarField& field) { return field.mean() * field.geometry().volume(); }

double inner_product(const ScalarField& f, const ScalarField& g) {
  f.require_compatible(g, "inner product");
  return kernels::blocked_dot(f.values(), g.values()) / static_cast<double>(f.size()) *
         f.geometry().volume();
}

double lp_norm(const ScalarField& field, double p, const RegionMask& mask) {
  if (!(p >= 1.0) || !std::isfinite(p)) {
    throw Error(ErrorKind::InvalidArgument, "lp_norm needs a finite p >= 1");
  }
  mask.require_compatible(field, "lp_norm");
  require_area(mask);
  const auto v = field.values();
  std::vector<double> powered(v.size());
  if (p == 2.0) {
    for (std::size_t k = 0; k < v.size(); ++k) powered[k] = v[k] * v[k];
  } else {
    for (std::size_t k = 0; k < v.size(); ++k) powered[k] = std::pow(std::abs(v[k]), p);
  }
  const double integral = kernels::blocked_dot(powered, mask.weights()) /
                          static_cast<double>(v.size()) * field.geometry().volume();
  return std::pow(integral, 1.0 / p);
}

double lp_norm(const ScalarField& field, double p) {
  return lp_norm(field, p, RegionMask::full(field.geometry(), field.grid()));
}

double sup_norm(const ScalarField& field, const RegionMask& mask) {
  mask.require_compatible(field, "sup_norm");
  require_area(mask);
  double m = 0.0;
  bool any = false;
  for (std::size_t k = 0; k < field.size(); ++k) {
    if (mask[k] > 0.5) {
      m = std::max(m, std::abs(field[k]));
      any = true;
    }
  }
  if (!any) throw Error(ErrorKind::EmptyMask, "no sample has mask weight above 1/2");
  return m;
}

double sup_norm(const ScalarField& field) { return kernels::max_abs(field.values()); }

}  // namespace vortexlab::torus
