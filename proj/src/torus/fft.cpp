#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <memory>
#include <mutex>
#include <tuple>

#include "vortexlab/kernels/pointwise.hpp"

namespace vortexlab::torus::detail {

namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

void ensure_threads_initialised() {
  static const bool ok = fftw_init_threads() != 0;
  (void)ok;
}

}  // namespace

Fft2d::Fft2d(const GridSpec& grid, int threads) : grid_(grid) {
  const int n0 = static_cast<int>(grid.ny());
  const int n1 = static_cast<int>(grid.nx());
  double* real = fftw_alloc_real(grid.size());
  fftw_complex* spec = fftw_alloc_complex(grid.spectrum_size());
  fftw_plan_with_nthreads(threads);
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  forward_plan_ = fftw_plan_dft_r2c_2d(n0, n1, real, spec, flags);
  inverse_plan_ = fftw_plan_dft_c2r_2d(n0, n1, spec, real, flags | FFTW_DESTROY_INPUT);
  fftw_free(real);
  fftw_free(spec);
}

Fft2d::~Fft2d() {
  std::lock_guard<std::mutex> lock(planner_mutex());
  fftw_destroy_plan(static_cast<fftw_plan>(forward_plan_));
  fftw_destroy_plan(static_cast<fftw_plan>(inverse_plan_));
}

const Fft2d& Fft2d::for_grid(const GridSpec& grid) {
  // The mutex must outlive the cache: plans are destroyed under it at exit.
  std::mutex& mutex = planner_mutex();
  using Key = std::tuple<std::size_t, std::size_t, int>;
  static std::map<Key, std::unique_ptr<Fft2d>> cache;
  const int threads = kernels::thread_count();
  std::lock_guard<std::mutex> lock(mutex);
  ensure_threads_initialised();
  auto& slot = cache[Key{grid.nx(), grid.ny(), threads}];
  if (!slot) slot = std::make_unique<Fft2d>(grid, threads);
  return *slot;
}

void Fft2d::forward(std::span<const double> in, std::span<Complex> out) const {
  fftw_execute_dft_r2c(static_cast<fftw_plan>(forward_plan_), const_cast<double*>(in.data()),
                       reinterpret_cast<fftw_complex*>(out.data()));
}

void Fft2d::inverse(std::span<Complex> in, std::span<double> out) const {
  fftw_execute_dft_c2r(static_cast<fftw_plan>(inverse_plan_),
                       reinterpret_cast<fftw_complex*>(in.data()), out.data());
  const double scale = 1.0 / static_cast<double>(grid_.size());
  for (double& v : out) v *= scale;
}

}  // namespace vortexlab::torus::detail
