#include "vortexlab/green/green.hpp"

#include <cmath>
#include <numbers>

#include "vortexlab/error.hpp"
#include "vortexlab/green/theta.hpp"

namespace vortexlab::green {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kMinAspect = 0.1;

struct Reduced {
  Complex z;
  Complex tau;
  double y;
  bool singular;
};

Reduced reduce(torus::Point point, const torus::TorusGeometry& geometry) {
  const double lx = geometry.length_x();
  const double ly = geometry.length_y();
  if (ly / lx < kMinAspect) {
    throw Error(ErrorKind::BadTau, "torus aspect ratio ly/lx below 0.1 is not supported");
  }
  const torus::Point d = geometry.displacement({0.0, 0.0}, point);
  return {Complex(d.x, d.y) / lx, Complex(0.0, ly / lx), d.y, d.x == 0.0 && d.y == 0.0};
}

}  // namespace

double torus_green(torus::Point point, const torus::TorusGeometry& geometry) {
  const Reduced r = reduce(point, geometry);
  if (r.singular) return kSingularGreen;
  const double modulus = std::abs(theta1(r.z, r.tau));
  if (modulus == 0.0) return kSingularGreen;
  return (std::log(modulus) - kPi * r.y * r.y / geometry.volume()) / (2.0 * kPi);
}

GreenGradient torus_green_gradient(torus::Point point, const torus::TorusGeometry& geometry) {
  const Reduced r = reduce(point, geometry);
  if (r.singular) return {};
  const Complex ratio = theta1_derivative(r.z, r.tau) / theta1(r.z, r.tau);
  const double lx = geometry.length_x();
  // d/dx Re log theta = Re(theta'/theta)/lx, d/dy = -Im(theta'/theta)/lx.
  return {ratio.real() / (2.0 * kPi * lx),
          (-ratio.imag() / lx - 2.0 * kPi * r.y / geometry.volume()) / (2.0 * kPi)};
}

}  // namespace vortexlab::green
