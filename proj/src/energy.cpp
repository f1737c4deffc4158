#include "threshwet/energy.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>


namespace threshwet {

double EnergyBreakdown::sharp_scaled_total() const { return std::sqrt(std::numbers::pi) * total; }
double EnergyBreakdown::sharp_scaled_lv() const { return std::sqrt(std::numbers::pi) * lv_term; }

namespace {

double masked_sum(const IndicatorField& mask, const ScalarField& f) {
  double s = 0.0;
  for (std::size_t n = 0; n < mask.values.size(); ++n) {
    if (mask.values[n]) s += f.values[n];
  }
  return s;
}

}  // namespace

EnergyBreakdown energy_from_smoothed(const PhasePartition& p, const SurfaceTensionSet& t, double dt,
                                     const ScalarField& smoothed_vapor,
                                     const std::vector<ScalarField>& smoothed_solids) {
  if (t.solids.size() != p.solids.size() || smoothed_solids.size() != p.solids.size()) {
    throw std::invalid_argument("approx_energy: one tension pair per solid material required");
  }
  if (smoothed_vapor.grid != p.grid()) throw std::invalid_argument("approx_energy: grid mismatch");
  const double w = p.grid().cell_area() / std::sqrt(dt);
  EnergyBreakdown e;
  e.dt = dt;
  e.lv_term = t.gamma_lv * w * masked_sum(p.liquid, smoothed_vapor);
  for (std::size_t m = 0; m < p.solids.size(); ++m) {
    e.sl_term += t.solids[m].gamma_sl * w * masked_sum(p.liquid, smoothed_solids[m]);
    e.sv_term += t.solids[m].gamma_sv * w * masked_sum(p.vapor, smoothed_solids[m]);
  }
  e.total = e.lv_term + e.sl_term + e.sv_term;
  return e;
}

EnergyBreakdown approx_energy(const PhasePartition& p, const SurfaceTensionSet& t, const KernelSpectrum& ks) {
  if (p.grid() != ks.grid()) throw std::invalid_argument("approx_energy: grid mismatch");
  std::vector<ScalarField> solids;
  solids.reserve(p.solids.size());
  for (const auto& s : p.solids) solids.push_back(convolve(s, ks));
  return energy_from_smoothed(p, t, ks.dt(), convolve(p.vapor, ks), solids);
}

double linearized_value(const IndicatorField& candidate_liquid, const IndicatorField& candidate_vapor,
                        const PhasePartition& reference, const SurfaceTensionSet& t, const KernelSpectrum& ks) {
  if (candidate_liquid.grid != reference.grid() || candidate_vapor.grid != reference.grid()) {
    throw std::invalid_argument("linearized_value: grid mismatch");
  }
  if (t.solids.size() != reference.solids.size()) {
    throw std::invalid_argument("linearized_value: one tension pair per solid material required");
  }
  // Tensions only need to be finite here; a zero set gives a zero functional.
  std::vector<double> w1{0.0, t.gamma_lv}, w2{t.gamma_lv, 0.0};
  for (const SolidTension& m : t.solids) {
    w1.push_back(m.gamma_sl);
    w2.push_back(m.gamma_sv);
  }
  const ScalarField phi1 = smoothed_occupancy(reference, w1, ks);
  const ScalarField phi2 = smoothed_occupancy(reference, w2, ks);
  const double scale = reference.grid().cell_area() / std::sqrt(ks.dt());
  return scale * (masked_sum(candidate_liquid, phi1) + masked_sum(candidate_vapor, phi2));
}

}  // namespace threshwet
