#pragma once

#include <memory>
#include <span>

#include "threshwet/grid.hpp"

namespace threshwet {

namespace detail {
struct FftPlans;
}

/// Fourier multipliers of the periodic heat kernel G_dt on the torus spanned
/// by the grid: exp(-dt * (xi_x^2 + xi_y^2)) with xi = 2 pi k / L for signed
/// integer frequencies k. The kernel is the exact wrapped Gaussian, so no
/// reflective padding is applied; callers keep interfaces away from any seam
/// where the configuration is discontinuous across the periodic wrap.
class KernelSpectrum {
 public:
  KernelSpectrum(const GridSpec& grid, double dt);

  const GridSpec& grid() const { return grid_; }
  double dt() const { return dt_; }

  /// Full nx*ny multiplier array, row-major over (kx index, ky index) in FFT
  /// order (index i maps to frequency i for i <= n/2, i - n otherwise).
  std::span<const double> multipliers() const { return multipliers_; }
  double multiplier(int i, int j) const { return multipliers_[grid_.index(i, j)]; }

  /// Signed integer frequency of FFT index i on an axis of n points.
  static int signed_frequency(int i, int n) { return i <= n / 2 ? i : i - n; }

 private:
  friend ScalarField convolve(const ScalarField&, const KernelSpectrum&);

  GridSpec grid_;
  double dt_;
  std::vector<double> multipliers_;
  std::vector<double> half_multipliers_;  // r2c layout, ny x (nx/2+1)
  std::shared_ptr<const detail::FftPlans> plans_;
};

/// G_dt * f on the periodic grid. Mean-preserving; output is real.
ScalarField convolve(const ScalarField& f, const KernelSpectrum& ks);
ScalarField convolve(const IndicatorField& f, const KernelSpectrum& ks);

ScalarField to_scalar(const IndicatorField& f);

/// G_dt * (sum_i w_i chi_i) with phases ordered (liquid, vapor, solid_0, ...).
/// One transform pass; equal to the weighted sum of the individual
/// convolutions by linearity.
ScalarField smoothed_occupancy(const PhasePartition& p, std::span<const double> weights, const KernelSpectrum& ks);

}  // namespace threshwet
