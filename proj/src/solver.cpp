#include "threshwet/solver.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include "threshwet/dynamics.hpp"

namespace threshwet {

SolverConfig SolverConfig::defaults(const GridSpec& grid, double dt0, bool refine) {
  SolverConfig c;
  c.dt0 = dt0;
  c.eps = grid.cell_area();
  c.eps1 = grid.cell_area();
  c.dt_min = grid.dx() * grid.dx();
  c.refine = refine;
  return c;
}

void SolverConfig::validate() const {
  if (!(dt0 > 0.0)) throw std::invalid_argument("SolverConfig: dt0 must be positive");
  if (!(eps > 0.0) || !(eps1 > 0.0)) throw std::invalid_argument("SolverConfig: eps and eps1 must be positive");
  if (!(dt_min > 0.0) || dt_min > dt0) throw std::invalid_argument("SolverConfig: need 0 < dt_min <= dt0");
  if (max_iters < 1) throw std::invalid_argument("SolverConfig: max_iters must be >= 1");
}

std::string to_string(Termination t) {
  switch (t) {
    case Termination::converged: return "converged";
    case Termination::refined_converged: return "refined-converged";
    case Termination::max_iters: return "max_iters";
    case Termination::dt_floor: return "dt_floor";
    case Termination::fixed_steps: return "fixed_steps";
  }
  return "unknown";
}

StepContext::StepContext(const PhasePartition& solids_from, const SurfaceTensionSet& tensions)
    : solids_(solids_from.solids), fluid_(solids_from.fluid_mask()), tensions_(tensions) {
  tensions_.validate();
  if (tensions_.solids.size() != solids_.size()) {
    throw std::invalid_argument("StepContext: one tension pair per solid material required");
  }
}

const StepContext::Level& StepContext::level(double dt) {
  auto it = levels_.find(dt);
  if (it != levels_.end()) return it->second;
  KernelSpectrum ks(fluid_.grid, dt);
  std::vector<ScalarField> smoothed;
  smoothed.reserve(solids_.size());
  for (const auto& s : solids_) smoothed.push_back(convolve(s, ks));
  return levels_.emplace(dt, Level{std::move(ks), std::move(smoothed)}).first->second;
}

StepContext::Evaluation StepContext::evaluate(const PhasePartition& p, const Level& lvl) const {
  ScalarField gv = convolve(p.vapor, lvl.spectrum);
  EnergyBreakdown e = energy_from_smoothed(p, tensions_, lvl.spectrum.dt(), gv, lvl.smoothed_solids);
  return {std::move(gv), e};
}

ScalarField StepContext::score(const Level& lvl, const ScalarField& smoothed_vapor) const {
  const double scale = tensions_.gamma_lv / std::sqrt(lvl.spectrum.dt());
  ScalarField g(smoothed_vapor.grid);
  for (std::size_t n = 0; n < g.values.size(); ++n) g.values[n] = 2.0 * smoothed_vapor.values[n] - 1.0;
  for (std::size_t m = 0; m < lvl.smoothed_solids.size(); ++m) {
    const double w = 1.0 - tensions_.cos_theta(m);
    const auto& gs = lvl.smoothed_solids[m].values;
    for (std::size_t n = 0; n < g.values.size(); ++n) g.values[n] += w * gs[n];
  }
  for (auto& v : g.values) v *= scale;
  return g;
}

namespace {

RunTrace iterate(const PhasePartition& p0, const SurfaceTensionSet& t, const SolverConfig& cfg,
                 std::optional<std::size_t> target_cells, const StepObserver& observer, bool refine) {
  cfg.validate();
  p0.validate();
  StepContext ctx(p0, t);
  const std::size_t M = target_cells.value_or(p0.liquid.count());
  const double cell = p0.grid().cell_area();

  RunTrace trace;
  trace.liquid_cells = M;
  trace.termination = Termination::max_iters;

  double dt = cfg.dt0;
  const StepContext::Level* lvl = &ctx.level(dt);
  PhasePartition current = p0;
  StepContext::Evaluation eval = ctx.evaluate(current, *lvl);
  PhasePartition checkpoint = p0;

  for (int iter = 1; iter <= cfg.max_iters; ++iter) {
    const ScalarField g = ctx.score(*lvl, eval.smoothed_vapor);
    ThresholdResult th = threshold_exact_volume(g, ctx.fluid_mask(), M);
    const std::size_t changed = symmetric_difference_count(current.liquid, th.new_liquid);
    StepRecord rec;
    rec.iter = iter;
    rec.dt = dt;
    rec.energy_before = eval.energy.total;
    rec.delta = th.delta;
    rec.sym_diff = static_cast<double>(changed) * cell;
    rec.volume = static_cast<double>(M) * cell;
    rec.adjusts_volume = iter == 1 && M != p0.liquid.count();
    if (changed != 0) {
      current = with_liquid(current, std::move(th.new_liquid));
      eval = ctx.evaluate(current, *lvl);
    }
    rec.energy = eval.energy.total;
    trace.records.push_back(rec);
    if (observer) observer(rec, current);

    // The first step of a run whose target count differs from p0 adjusts the
    // volume; it is never taken as convergence.
    if (rec.sym_diff > cfg.eps || rec.adjusts_volume) continue;
    if (!refine) {
      trace.termination = Termination::converged;
      break;
    }
    if (symmetric_difference_area(checkpoint.liquid, current.liquid) >= cfg.eps1) {
      checkpoint = current;
      if (dt * 0.5 < cfg.dt_min) {
        trace.termination = Termination::dt_floor;
        break;
      }
      dt *= 0.5;
      ++trace.halvings;
      lvl = &ctx.level(dt);
      eval = ctx.evaluate(current, *lvl);
    } else {
      checkpoint = current;
      trace.termination = Termination::refined_converged;
      break;
    }
  }
  trace.final_partition = std::move(current);
  return trace;
}

}  // namespace

RunTrace run_to_equilibrium(const PhasePartition& p0, const SurfaceTensionSet& t, const SolverConfig& cfg,
                            std::optional<std::size_t> target_cells, const StepObserver& observer) {
  return iterate(p0, t, cfg, target_cells, observer, false);
}

RunTrace run_with_time_refinement(const PhasePartition& p0, const SurfaceTensionSet& t, const SolverConfig& cfg,
                                  std::optional<std::size_t> target_cells, const StepObserver& observer) {
  return iterate(p0, t, cfg, target_cells, observer, true);
}

RunTrace solve(const PhasePartition& p0, const SurfaceTensionSet& t, const SolverConfig& cfg,
               std::optional<std::size_t> target_cells, const StepObserver& observer) {
  return iterate(p0, t, cfg, target_cells, observer, cfg.refine);
}

RunTrace evolve_fixed_steps(const PhasePartition& p0, const SurfaceTensionSet& t, const KernelSpectrum& ks,
                            int n_steps, const StepObserver& observer) {
  if (n_steps < 1) throw std::invalid_argument("evolve_fixed_steps: n_steps must be >= 1");
  p0.validate();
  const std::size_t M = p0.liquid.count();
  const double cell = p0.grid().cell_area();
  RunTrace trace;
  trace.liquid_cells = M;
  trace.termination = Termination::fixed_steps;
  PhasePartition current = p0;
  double e_prev = approx_energy(current, t, ks).total;
  for (int iter = 1; iter <= n_steps; ++iter) {
    StepOutcome out = mbo_step(current, t, ks, M);
    StepRecord rec;
    rec.iter = iter;
    rec.dt = ks.dt();
    rec.energy_before = e_prev;
    rec.delta = out.threshold.delta;
    rec.sym_diff = symmetric_difference_area(current.liquid, out.partition.liquid);
    rec.volume = static_cast<double>(out.partition.liquid.count()) * cell;
    current = std::move(out.partition);
    rec.energy = approx_energy(current, t, ks).total;
    e_prev = rec.energy;
    trace.records.push_back(rec);
    if (observer) observer(rec, current);
  }
  trace.final_partition = std::move(current);
  return trace;
}

}  // namespace threshwet
