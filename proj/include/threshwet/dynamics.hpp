#pragma once

#include <cstddef>
#include <vector>

#include "threshwet/grid.hpp"
#include "threshwet/spectral.hpp"

namespace threshwet {

/// phi1 = G*(gamma_LV chi_vapor + sum_m gamma_SL[m] chi_solid_m) / sqrt(dt),
/// phi2 = G*(gamma_LV chi_liquid + sum_m gamma_SV[m] chi_solid_m) / sqrt(dt).
struct ScorePair {
  ScalarField phi1;
  ScalarField phi2;

  ScalarField difference() const;  // phi1 - phi2
};

struct ThresholdResult {
  IndicatorField new_liquid;
  double delta = 0.0;          // (g_M + g_{M+1}) / 2 over sorted fluid scores
  std::size_t selected_cells = 0;
};

ScorePair scores_algorithm_I(const PhasePartition& p, const SurfaceTensionSet& t, const KernelSpectrum& ks);

/// phi = gamma_LV / sqrt(dt) * G*(chi_vapor - chi_liquid - sum_m cos(theta_m) chi_solid_m).
ScalarField score_algorithm_II(const PhasePartition& p, const std::vector<double>& theta_y, double gamma_lv,
                               const KernelSpectrum& ks);

/// Selects exactly M fluid cells with the smallest score, ties broken by the
/// lower linear cell index. Membership is decided by selection; delta is only
/// reported. Edge rules: M = 0 reports delta = g_1 - 1, M = all fluid cells
/// reports delta = g_M + 1 (with no fluid cells at all, delta = 0).
ThresholdResult threshold_exact_volume(const ScalarField& score, const IndicatorField& fluid_mask, std::size_t M);

/// Cell count M = floor(V0 / (dx dy)) for a target volume.
std::size_t cells_for_volume(const GridSpec& grid, double v0);

struct StepOutcome {
  PhasePartition partition;
  ThresholdResult threshold;
};

/// One thresholding iteration: liquid becomes the M lowest-scoring fluid cells
/// of phi1 - phi2, vapor the remaining fluid cells; solids are copied through.
StepOutcome mbo_step(const PhasePartition& p, const SurfaceTensionSet& t, const KernelSpectrum& ks, std::size_t M);

/// Rebuilds a partition from a new liquid set over the same solids.
PhasePartition with_liquid(const PhasePartition& p, IndicatorField liquid);

}  // namespace threshwet
