#include "threshwet/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <utility>

namespace threshwet {

namespace detail {

// FFTW planning is not thread-safe; execution with new arrays is. Plans are
// built once per grid shape with FFTW_ESTIMATE so that the chosen algorithm,
// and therefore every output bit, is reproducible across processes.
struct FftPlans {
  int nx = 0;
  int ny = 0;
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;

  FftPlans(int nx_, int ny_) : nx(nx_), ny(ny_) {
    const std::size_t n_real = static_cast<std::size_t>(nx) * ny;
    const std::size_t n_cplx = static_cast<std::size_t>(nx / 2 + 1) * ny;
    double* in = fftw_alloc_real(n_real);
    fftw_complex* out = fftw_alloc_complex(n_cplx);
    forward = fftw_plan_dft_r2c_2d(ny, nx, in, out, FFTW_ESTIMATE);
    backward = fftw_plan_dft_c2r_2d(ny, nx, out, in, FFTW_ESTIMATE);
    fftw_free(in);
    fftw_free(out);
    if (forward == nullptr || backward == nullptr) throw std::runtime_error("FFTW planning failed");
  }
  FftPlans(const FftPlans&) = delete;
  FftPlans& operator=(const FftPlans&) = delete;
  ~FftPlans() {
    fftw_destroy_plan(forward);
    fftw_destroy_plan(backward);
  }
};

namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

std::shared_ptr<const FftPlans> plans_for(int nx, int ny) {
  static std::map<std::pair<int, int>, std::shared_ptr<const FftPlans>> cache;
  std::lock_guard lock(planner_mutex());
  auto& slot = cache[{nx, ny}];
  if (!slot) slot = std::make_shared<const FftPlans>(nx, ny);
  return slot;
}

struct FftwFree {
  void operator()(void* p) const { fftw_free(p); }
};

}  // namespace
}  // namespace detail

KernelSpectrum::KernelSpectrum(const GridSpec& grid, double dt) : grid_(grid), dt_(dt) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("KernelSpectrum: dt must be positive");
  if (grid.nx < 1 || grid.ny < 1) throw std::invalid_argument("KernelSpectrum: empty grid");
  const double two_pi = 2.0 * std::numbers::pi;
  std::vector<double> fx(grid.nx), fy(grid.ny);
  for (int i = 0; i < grid.nx; ++i) {
    const double xi = two_pi * signed_frequency(i, grid.nx) / grid.lx;
    fx[i] = std::exp(-dt * xi * xi);
  }
  for (int j = 0; j < grid.ny; ++j) {
    const double xi = two_pi * signed_frequency(j, grid.ny) / grid.ly;
    fy[j] = std::exp(-dt * xi * xi);
  }
  multipliers_.resize(grid.size());
  for (int j = 0; j < grid.ny; ++j) {
    for (int i = 0; i < grid.nx; ++i) multipliers_[grid.index(i, j)] = fx[i] * fy[j];
  }
  // Even symmetry guarantees the inverse transform of (multipliers x spectrum
  // of real data) is real, which is what lets convolve use c2r safely.
  for (int j = 0; j < grid.ny; ++j) {
    const int jr = (grid.ny - j) % grid.ny;
    for (int i = 0; i < grid.nx; ++i) {
      const int ir = (grid.nx - i) % grid.nx;
      if (multipliers_[grid.index(i, j)] != multipliers_[grid.index(ir, jr)]) {
        throw std::logic_error("KernelSpectrum: multipliers are not even");
      }
    }
  }
  const int half = grid.nx / 2 + 1;
  half_multipliers_.resize(static_cast<std::size_t>(half) * grid.ny);
  const double norm = 1.0 / static_cast<double>(grid.size());
  for (int j = 0; j < grid.ny; ++j) {
    for (int i = 0; i < half; ++i) {
      half_multipliers_[static_cast<std::size_t>(j) * half + i] = multipliers_[grid.index(i, j)] * norm;
    }
  }
  plans_ = detail::plans_for(grid.nx, grid.ny);
}

ScalarField convolve(const ScalarField& f, const KernelSpectrum& ks) {
  if (f.grid != ks.grid_) throw std::invalid_argument("convolve: grid mismatch");
  const GridSpec& g = ks.grid_;
  const int half = g.nx / 2 + 1;
  const std::size_t n_cplx = static_cast<std::size_t>(half) * g.ny;
  std::unique_ptr<double, detail::FftwFree> buf(fftw_alloc_real(g.size()));
  std::unique_ptr<fftw_complex, detail::FftwFree> spec(fftw_alloc_complex(n_cplx));
  std::copy(f.values.begin(), f.values.end(), buf.get());
  fftw_execute_dft_r2c(ks.plans_->forward, buf.get(), spec.get());
  fftw_complex* s = spec.get();
  for (std::size_t n = 0; n < n_cplx; ++n) {
    s[n][0] *= ks.half_multipliers_[n];
    s[n][1] *= ks.half_multipliers_[n];
  }
  fftw_execute_dft_c2r(ks.plans_->backward, spec.get(), buf.get());
  ScalarField out(g);
  std::copy(buf.get(), buf.get() + g.size(), out.values.begin());
  return out;
}

ScalarField to_scalar(const IndicatorField& f) {
  ScalarField s(f.grid);
  for (std::size_t n = 0; n < f.values.size(); ++n) s.values[n] = f.values[n];
  return s;
}

ScalarField convolve(const IndicatorField& f, const KernelSpectrum& ks) { return convolve(to_scalar(f), ks); }

ScalarField smoothed_occupancy(const PhasePartition& p, std::span<const double> weights, const KernelSpectrum& ks) {
  if (weights.size() != 2 + p.solids.size()) {
    throw std::invalid_argument("smoothed_occupancy: need one weight per phase");
  }
  for (double w : weights) {
    if (!std::isfinite(w)) throw std::invalid_argument("smoothed_occupancy: non-finite weight");
  }
  const GridSpec& g = p.grid();
  ScalarField mix(g);
  for (std::size_t n = 0; n < g.size(); ++n) {
    double v = weights[0] * p.liquid.values[n] + weights[1] * p.vapor.values[n];
    for (std::size_t m = 0; m < p.solids.size(); ++m) v += weights[2 + m] * p.solids[m].values[n];
    mix.values[n] = v;
  }
  return convolve(mix, ks);
}

}  // namespace threshwet
