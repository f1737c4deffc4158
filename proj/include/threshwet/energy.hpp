#pragma once

#include <vector>

#include "threshwet/grid.hpp"
#include "threshwet/spectral.hpp"

namespace threshwet {

/// Kernel approximation of the interfacial energy,
///   E = gamma_LV/sqrt(dt) int chi_L G*chi_V + sum_m gamma_SL[m]/sqrt(dt) int chi_L G*chi_Sm
///       + sum_m gamma_SV[m]/sqrt(dt) int chi_V G*chi_Sm,
/// with integrals evaluated as cell sums times dx dy.
struct EnergyBreakdown {
  double lv_term = 0.0;
  double sl_term = 0.0;
  double sv_term = 0.0;
  double total = 0.0;
  double dt = 0.0;

  /// The kernel functional approximates the sharp energy divided by sqrt(pi);
  /// this rescales it for comparison with geometric lengths.
  double sharp_scaled_total() const;
  double sharp_scaled_lv() const;
};

EnergyBreakdown approx_energy(const PhasePartition& p, const SurfaceTensionSet& t, const KernelSpectrum& ks);

/// Same functional from precomputed G*chi_vapor and G*chi_solid_m.
EnergyBreakdown energy_from_smoothed(const PhasePartition& p, const SurfaceTensionSet& t, double dt,
                                     const ScalarField& smoothed_vapor,
                                     const std::vector<ScalarField>& smoothed_solids);

/// Linearized functional about a reference partition:
///   L(u1, u2) = int u1 phi1 + int u2 phi2
/// where phi1, phi2 are the Algorithm-I scores of the reference.
double linearized_value(const IndicatorField& candidate_liquid, const IndicatorField& candidate_vapor,
                        const PhasePartition& reference, const SurfaceTensionSet& t, const KernelSpectrum& ks);

}  // namespace threshwet
