#include "vortexlab/torus/spectral.hpp"

#include <cmath>
#include <numbers>

#include "fft.hpp"
#include "vortexlab/error.hpp"
#include "vortexlab/kernels/pointwise.hpp"

namespace vortexlab::torus {

using detail::Complex;
using detail::Fft2d;
using detail::signed_mode;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Wavenumbers {
  std::vector<double> kx;  // nx/2 + 1 entries
  std::vector<double> ky;  // ny entries, signed

  Wavenumbers(const TorusGeometry& geometry, const GridSpec& grid)
      : kx(grid.nx() / 2 + 1), ky(grid.ny()) {
    for (std::size_t i = 0; i < kx.size(); ++i) {
      kx[i] = kTwoPi * static_cast<double>(i) / geometry.length_x();
    }
    for (std::size_t j = 0; j < ky.size(); ++j) {
      ky[j] = kTwoPi * static_cast<double>(signed_mode(j, grid.ny())) / geometry.length_y();
    }
  }
};

std::vector<Complex> spectrum_of(const ScalarField& field) {
  std::vector<Complex> spec(field.grid().spectrum_size());
  Fft2d::for_grid(field.grid()).forward(field.values(), spec);
  return spec;
}

ScalarField field_from(std::vector<Complex>& spec, const TorusGeometry& geometry,
                       const GridSpec& grid) {
  ScalarField out(geometry, grid);
  Fft2d::for_grid(grid).inverse(spec, out.values());
  return out;
}

// Periodic cardinal function of an even-sized grid: 1 at t = 0, 0 at the
// other samples, trigonometric of degree N/2 with the Nyquist term as cosine.
double periodic_sinc(double t, double period, std::size_t n) {
  double r = std::remainder(t, period);
  const double arg = std::numbers::pi * r / period;
  if (std::abs(arg) < 1e-15) return 1.0;
  return std::sin(static_cast<double>(n) * arg) / (static_cast<double>(n) * std::tan(arg));
}

}  // namespace

ScalarField laplacian(const ScalarField& field) {
  const GridSpec& grid = field.grid();
  const Wavenumbers k(field.geometry(), grid);
  auto spec = spectrum_of(field);
  const std::size_t half = grid.nx() / 2 + 1;
  for (std::size_t j = 0; j < grid.ny(); ++j) {
    for (std::size_t i = 0; i < half; ++i) {
      spec[j * half + i] *= -(k.kx[i] * k.kx[i] + k.ky[j] * k.ky[j]);
    }
  }
  return field_from(spec, field.geometry(), grid);
}

Gradient gradient(const ScalarField& field) {
  const GridSpec& grid = field.grid();
  const Wavenumbers k(field.geometry(), grid);
  auto spec_x = spectrum_of(field);
  auto spec_y = spec_x;
  const std::size_t half = grid.nx() / 2 + 1;
  const Complex i_unit(0.0, 1.0);
  for (std::size_t j = 0; j < grid.ny(); ++j) {
    const bool y_nyquist = (j == grid.ny() / 2);
    for (std::size_t i = 0; i < half; ++i) {
      const bool x_nyquist = (i == grid.nx() / 2);
      const std::size_t idx = j * half + i;
      spec_x[idx] = x_nyquist ? Complex(0.0) : spec_x[idx] * (i_unit * k.kx[i]);
      spec_y[idx] = y_nyquist ? Complex(0.0) : spec_y[idx] * (i_unit * k.ky[j]);
    }
  }
  return {field_from(spec_x, field.geometry(), grid), field_from(spec_y, field.geometry(), grid)};
}

ScalarField gradient_norm(const ScalarField& field) {
  Gradient g = gradient(field);
  ScalarField out(field.geometry(), field.grid());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = std::hypot(g.dx[k], g.dy[k]);
  return out;
}

double dirichlet_energy(const ScalarField& field) {
  // Equal to <f, -laplacian f> in the quadrature inner product.
  const GridSpec& grid = field.grid();
  const Wavenumbers k(field.geometry(), grid);
  const auto spec = spectrum_of(field);
  const std::size_t half = grid.nx() / 2 + 1;
  std::vector<double> terms(spec.size());
  for (std::size_t j = 0; j < grid.ny(); ++j) {
    for (std::size_t i = 0; i < half; ++i) {
      const double multiplicity = (i == 0 || i == grid.nx() / 2) ? 1.0 : 2.0;
      const double k2 = k.kx[i] * k.kx[i] + k.ky[j] * k.ky[j];
      terms[j * half + i] = multiplicity * k2 * std::norm(spec[j * half + i]);
    }
  }
  const double n = static_cast<double>(grid.size());
  return field.geometry().volume() * kernels::blocked_sum(terms) / (n * n);
}

ScalarField resample(const ScalarField& field, const GridSpec& grid) {
  const GridSpec& src = field.grid();
  if (src == grid) return field;

  const auto spec = spectrum_of(field);
  const std::size_t src_half = src.nx() / 2 + 1;
  const std::size_t dst_half = grid.nx() / 2 + 1;
  std::vector<Complex> out(grid.spectrum_size(), Complex(0.0));

  // Weight with which source mode `m` (signed) feeds a destination mode of the
  // same frequency: 1 inside both bands, 1/2 when a source Nyquist mode is
  // split between +-N/2 of a finer grid, 0 when the destination cannot hold it.
  auto weight = [](long m, std::size_t n_src, std::size_t n_dst) {
    const long src_nyq = static_cast<long>(n_src / 2);
    const long dst_nyq = static_cast<long>(n_dst / 2);
    const long a = std::abs(m);
    if (a > src_nyq) return 0.0;
    if (n_dst < n_src && a >= dst_nyq) return 0.0;
    if (a == src_nyq && n_dst > n_src) return 0.5;
    return 1.0;
  };

  for (std::size_t j = 0; j < grid.ny(); ++j) {
    const long my = signed_mode(j, grid.ny());
    const double wy = weight(my, src.ny(), grid.ny());
    if (wy == 0.0) continue;
    const long sy = my < 0 ? my + static_cast<long>(src.ny()) : my;
    // source Nyquist row is stored once at n/2; signed_mode maps it to +n/2
    const std::size_t src_row = static_cast<std::size_t>(sy) % src.ny();
    for (std::size_t i = 0; i < dst_half; ++i) {
      const double wx = weight(static_cast<long>(i), src.nx(), grid.nx());
      if (wx == 0.0) continue;
      out[j * dst_half + i] = wx * wy * spec[src_row * src_half + i];
    }
  }
  // Undo the source normalisation and apply the destination's.
  const double scale = static_cast<double>(grid.size()) / static_cast<double>(src.size());
  for (auto& c : out) c *= scale;
  return field_from(out, field.geometry(), grid);
}

double sample_at(const ScalarField& field, Point point) {
  const GridSpec& grid = field.grid();
  const TorusGeometry& geometry = field.geometry();
  const double hx = geometry.length_x() / static_cast<double>(grid.nx());
  const double hy = geometry.length_y() / static_cast<double>(grid.ny());
  std::vector<double> wx(grid.nx());
  std::vector<double> wy(grid.ny());
  for (std::size_t i = 0; i < grid.nx(); ++i) {
    wx[i] = periodic_sinc(point.x - static_cast<double>(i) * hx, geometry.length_x(), grid.nx());
  }
  for (std::size_t j = 0; j < grid.ny(); ++j) {
    wy[j] = periodic_sinc(point.y - static_cast<double>(j) * hy, geometry.length_y(), grid.ny());
  }
  std::vector<double> rows(grid.ny());
  const auto values = field.values();
  for (std::size_t j = 0; j < grid.ny(); ++j) {
    rows[j] = wy[j] == 0.0 ? 0.0
                           : kernels::blocked_dot(values.subspan(j * grid.nx(), grid.nx()), wx);
  }
  return kernels::blocked_dot(rows, wy);
}

struct FourierMultiplier::Impl {
  GridSpec grid;
  TorusGeometry geometry;
  std::vector<double> symbol;
  mutable std::vector<Complex> buffer;
};

FourierMultiplier::FourierMultiplier(const TorusGeometry& geometry, const GridSpec& grid,
                                     const std::function<double(double, double)>& symbol)
    : impl_(std::make_unique<Impl>(Impl{grid, geometry, {}, {}})) {
  const Wavenumbers k(geometry, grid);
  const std::size_t half = grid.nx() / 2 + 1;
  impl_->symbol.resize(grid.spectrum_size());
  impl_->buffer.resize(grid.spectrum_size());
  for (std::size_t j = 0; j < grid.ny(); ++j) {
    for (std::size_t i = 0; i < half; ++i) impl_->symbol[j * half + i] = symbol(k.kx[i], k.ky[j]);
  }
}

FourierMultiplier::~FourierMultiplier() = default;
FourierMultiplier::FourierMultiplier(FourierMultiplier&&) noexcept = default;
FourierMultiplier& FourierMultiplier::operator=(FourierMultiplier&&) noexcept = default;

void FourierMultiplier::apply(std::span<const double> in, std::span<double> out) const {
  const Fft2d& fft = Fft2d::for_grid(impl_->grid);
  fft.forward(in, impl_->buffer);
  kernels::scale_spectrum(impl_->buffer, impl_->symbol);
  fft.inverse(impl_->buffer, out);
}

ScalarField FourierMultiplier::apply(const ScalarField& field) const {
  if (!(field.grid() == impl_->grid && field.geometry() == impl_->geometry)) {
    throw Error(ErrorKind::IncompatibleFields, "Fourier multiplier built for a different grid");
  }
  ScalarField out(field.geometry(), field.grid());
  apply(field.values(), out.values());
  return out;
}

}  // namespace vortexlab::torus
