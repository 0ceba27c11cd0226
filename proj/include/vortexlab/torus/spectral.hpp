#pragma once

// Spectral calculus on the periodic grid.
//
// Sign convention: `laplacian` is the analyst's Laplacian d^2/dx^2 + d^2/dy^2.
// The nonnegative Hodge Laplacian used in the vortex literature is its negative.

#include <complex>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "vortexlab/torus/field.hpp"

namespace vortexlab::torus {

/// Fourier mode (k1, k2) is multiplied by -((2 pi k1 / lx)^2 + (2 pi k2 / ly)^2).
ScalarField laplacian(const ScalarField& field);

struct Gradient {
  ScalarField dx;
  ScalarField dy;
};

/// Spectral first derivatives; Nyquist modes are dropped.
Gradient gradient(const ScalarField& field);
/// Pointwise |grad f|.
ScalarField gradient_norm(const ScalarField& field);
/// Integral of |grad f|^2, evaluated in Fourier space.
double dirichlet_energy(const ScalarField& field);

/// Band-limited resampling. Upsampling is exact trigonometric interpolation;
/// downsampling truncates to the modes the coarser grid resolves (its Nyquist
/// modes are zeroed).
ScalarField resample(const ScalarField& field, const GridSpec& grid);

/// Trigonometric interpolant of the samples evaluated at an arbitrary point.
double sample_at(const ScalarField& field, Point point);

/// A real, even Fourier multiplier on one (geometry, grid) pair, applied as
/// FFT -> scale -> inverse FFT. The symbol is a function of the physical
/// wavenumbers (kx, ky); the first-derivative Nyquist ambiguity does not
/// arise because the symbol is even.
class FourierMultiplier {
 public:
  FourierMultiplier(const TorusGeometry& geometry, const GridSpec& grid,
                    const std::function<double(double kx, double ky)>& symbol);
  ~FourierMultiplier();
  FourierMultiplier(FourierMultiplier&&) noexcept;
  FourierMultiplier& operator=(FourierMultiplier&&) noexcept;

  /// out = multiplier applied to in; both spans have grid.size() entries.
  void apply(std::span<const double> in, std::span<double> out) const;
  ScalarField apply(const ScalarField& field) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace vortexlab::torus
