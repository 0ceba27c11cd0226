#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "vortexlab/torus/geometry.hpp"

namespace vortexlab::torus::detail {

using Complex = std::complex<double>;

/// Cached FFTW plans for one grid. Forward is unnormalised; `inverse`
/// divides by nx*ny so that inverse(forward(x)) == x.
class Fft2d {
 public:
  static const Fft2d& for_grid(const GridSpec& grid);

  void forward(std::span<const double> in, std::span<Complex> out) const;
  /// Destroys `in`.
  void inverse(std::span<Complex> in, std::span<double> out) const;

  const GridSpec& grid() const noexcept { return grid_; }

  Fft2d(const GridSpec& grid, int threads);
  ~Fft2d();
  Fft2d(const Fft2d&) = delete;
  Fft2d& operator=(const Fft2d&) = delete;

 private:
  GridSpec grid_;
  void* forward_plan_ = nullptr;
  void* inverse_plan_ = nullptr;
};

/// Signed mode number of half-spectrum row j (ny rows).
inline long signed_mode(std::size_t j, std::size_t n) {
  return j <= n / 2 ? static_cast<long>(j) : static_cast<long>(j) - static_cast<long>(n);
}

}  // namespace vortexlab::torus::detail
