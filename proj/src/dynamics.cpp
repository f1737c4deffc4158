#include "threshwet/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

namespace threshwet {

ScalarField ScorePair::difference() const {
  if (phi1.grid != phi2.grid) throw std::invalid_argument("ScorePair: grid mismatch");
  ScalarField d(phi1.grid);
  for (std::size_t n = 0; n < d.values.size(); ++n) d.values[n] = phi1.values[n] - phi2.values[n];
  return d;
}

namespace {

void check_inputs(const PhasePartition& p, const KernelSpectrum& ks) {
  if (p.grid() != ks.grid()) throw std::invalid_argument("scores: spectrum grid does not match partition");
}

}  // namespace

ScorePair scores_algorithm_I(const PhasePartition& p, const SurfaceTensionSet& t, const KernelSpectrum& ks) {
  check_inputs(p, ks);
  t.validate();
  if (t.solids.size() != p.solids.size()) {
    throw std::invalid_argument("scores_algorithm_I: one tension pair per solid material required");
  }
  const double scale = 1.0 / std::sqrt(ks.dt());
  std::vector<double> w1(2 + p.solids.size()), w2(2 + p.solids.size());
  w1[0] = 0.0;
  w1[1] = scale * t.gamma_lv;
  w2[0] = scale * t.gamma_lv;
  w2[1] = 0.0;
  for (std::size_t m = 0; m < p.solids.size(); ++m) {
    w1[2 + m] = scale * t.solids[m].gamma_sl;
    w2[2 + m] = scale * t.solids[m].gamma_sv;
  }
  return {smoothed_occupancy(p, w1, ks), smoothed_occupancy(p, w2, ks)};
}

ScalarField score_algorithm_II(const PhasePartition& p, const std::vector<double>& theta_y, double gamma_lv,
                               const KernelSpectrum& ks) {
  check_inputs(p, ks);
  if (theta_y.size() != p.solids.size()) {
    throw std::invalid_argument("score_algorithm_II: one Young's angle per solid material required");
  }
  if (!(gamma_lv > 0.0)) throw std::invalid_argument("score_algorithm_II: gamma_lv must be positive");
  const double scale = gamma_lv / std::sqrt(ks.dt());
  std::vector<double> w(2 + p.solids.size());
  w[0] = -scale;
  w[1] = scale;
  for (std::size_t m = 0; m < theta_y.size(); ++m) {
    const double c = std::cos(theta_y[m]);
    if (!(theta_y[m] > 0.0 && theta_y[m] < std::numbers::pi) || !(std::abs(c) < 1.0)) {
      throw std::invalid_argument("score_algorithm_II: Young's angle must lie in (0, pi)");
    }
    w[2 + m] = -scale * c;
  }
  return smoothed_occupancy(p, w, ks);
}

ThresholdResult threshold_exact_volume(const ScalarField& score, const IndicatorField& fluid_mask, std::size_t M) {
  if (score.grid != fluid_mask.grid) throw std::invalid_argument("threshold_exact_volume: grid mismatch");
  struct Entry {
    double g;
    std::size_t idx;
  };
  std::vector<Entry> cells;
  cells.reserve(fluid_mask.values.size());
  for (std::size_t n = 0; n < fluid_mask.values.size(); ++n) {
    if (!fluid_mask.values[n]) continue;
    const double g = score.values[n];
    if (std::isnan(g)) throw std::invalid_argument("threshold_exact_volume: NaN score at cell " + std::to_string(n));
    cells.push_back({g, n});
  }
  if (M > cells.size()) {
    throw std::out_of_range("threshold_exact_volume: M = " + std::to_string(M) + " exceeds " +
                            std::to_string(cells.size()) + " fluid cells");
  }
  const auto less = [](const Entry& a, const Entry& b) { return a.g < b.g || (a.g == b.g && a.idx < b.idx); };

  ThresholdResult r{IndicatorField(score.grid), 0.0, M};
  if (cells.empty()) return r;
  if (M == 0) {
    r.delta = std::min_element(cells.begin(), cells.end(), less)->g - 1.0;
    return r;
  }
  if (M == cells.size()) {
    for (const auto& c : cells) r.new_liquid.values[c.idx] = 1;
    r.delta = std::max_element(cells.begin(), cells.end(), less)->g + 1.0;
    return r;
  }
  // Strict total order (score, index) makes the selected set unique.
  std::nth_element(cells.begin(), cells.begin() + static_cast<std::ptrdiff_t>(M), cells.end(), less);
  const double g_next = cells[M].g;
  const double g_m = std::max_element(cells.begin(), cells.begin() + static_cast<std::ptrdiff_t>(M), less)->g;
  for (std::size_t n = 0; n < M; ++n) r.new_liquid.values[cells[n].idx] = 1;
  r.delta = 0.5 * (g_m + g_next);
  return r;
}

std::size_t cells_for_volume(const GridSpec& grid, double v0) {
  if (!(v0 >= 0.0)) throw std::invalid_argument("cells_for_volume: negative volume");
  return static_cast<std::size_t>(std::floor(v0 / grid.cell_area()));
}

PhasePartition with_liquid(const PhasePartition& p, IndicatorField liquid) {
  PhasePartition out;
  out.solids = p.solids;
  out.vapor = IndicatorField(p.grid());
  const IndicatorField fluid = p.fluid_mask();
  for (std::size_t n = 0; n < fluid.values.size(); ++n) {
    if (liquid.values[n] && !fluid.values[n]) throw std::invalid_argument("with_liquid: liquid on solid cell");
    out.vapor.values[n] = static_cast<std::uint8_t>(fluid.values[n] & (1 - liquid.values[n]));
  }
  out.liquid = std::move(liquid);
  return out;
}

StepOutcome mbo_step(const PhasePartition& p, const SurfaceTensionSet& t, const KernelSpectrum& ks, std::size_t M) {
  check_inputs(p, ks);
  t.validate();
  if (t.solids.size() != p.solids.size()) {
    throw std::invalid_argument("mbo_step: one tension pair per solid material required");
  }
  // phi1 - phi2 in a single pass: weights (-gamma_LV, gamma_LV, gamma_SL - gamma_SV) / sqrt(dt).
  const double scale = 1.0 / std::sqrt(ks.dt());
  std::vector<double> w(2 + p.solids.size());
  w[0] = -scale * t.gamma_lv;
  w[1] = scale * t.gamma_lv;
  for (std::size_t m = 0; m < p.solids.size(); ++m) {
    w[2 + m] = scale * (t.solids[m].gamma_sl - t.solids[m].gamma_sv);
  }
  const ScalarField g = smoothed_occupancy(p, w, ks);
  ThresholdResult th = threshold_exact_volume(g, p.fluid_mask(), M);
  PhasePartition next = with_liquid(p, th.new_liquid);
  return {std::move(next), std::move(th)};
}

}  // namespace threshwet
