#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "threshwet/energy.hpp"
#include "threshwet/grid.hpp"
#include "threshwet/spectral.hpp"

namespace threshwet {

struct SolverConfig {
  double dt0 = 0.0;
  double eps = 0.0;     // inner stop: symmetric-difference area between iterates
  double eps1 = 0.0;    // refinement stop: symmetric-difference area against the last checkpoint
  double dt_min = 0.0;  // refinement floor
  int max_iters = 10000;
  bool refine = false;

  /// eps = eps1 = one cell area, dt_min = dx^2.
  static SolverConfig defaults(const GridSpec& grid, double dt0, bool refine = false);
  void validate() const;
};

enum class Termination { converged, refined_converged, max_iters, dt_floor, fixed_steps };

std::string to_string(Termination t);

struct StepRecord {
  int iter = 0;
  double dt = 0.0;
  double energy = 0.0;         // E^dt of the state after the step
  double energy_before = 0.0;  // E^dt of the state before the step, same dt
  double delta = 0.0;
  double sym_diff = 0.0;
  double volume = 0.0;
  bool adjusts_volume = false;  // step changed the liquid cell count (new target M)
};

struct RunTrace {
  std::vector<StepRecord> records;
  PhasePartition final_partition;
  Termination termination = Termination::converged;
  std::size_t liquid_cells = 0;
  int halvings = 0;
};

using StepObserver = std::function<void(const StepRecord&, const PhasePartition&)>;

/// Per-run cache of everything that depends only on the solids and dt: the
/// kernel spectrum and G*chi_solid for each material. With those, one
/// convolution of the vapor indicator per iteration yields both the energy of
/// the current state and the thresholding score, using G*1 = 1:
///   G*chi_liquid = 1 - G*chi_vapor - sum_m G*chi_solid_m.
class StepContext {
 public:
  struct Level {
    KernelSpectrum spectrum;
    std::vector<ScalarField> smoothed_solids;
  };
  struct Evaluation {
    ScalarField smoothed_vapor;
    EnergyBreakdown energy;
  };

  StepContext(const PhasePartition& solids_from, const SurfaceTensionSet& tensions);

  const Level& level(double dt);
  Evaluation evaluate(const PhasePartition& p, const Level& lvl) const;

  /// Algorithm-II score gamma_LV/sqrt(dt) G*(chi_V - chi_L - sum cos(theta_m) chi_Sm),
  /// assembled from the cached smoothings.
  ScalarField score(const Level& lvl, const ScalarField& smoothed_vapor) const;

  const IndicatorField& fluid_mask() const { return fluid_; }
  const SurfaceTensionSet& tensions() const { return tensions_; }

 private:
  std::vector<IndicatorField> solids_;
  IndicatorField fluid_;
  SurfaceTensionSet tensions_;
  std::map<double, Level> levels_;
};

/// Algorithm I with fixed dt until the iterate changes by at most eps
/// (refine = false) or the time-refinement loop (refine = true). The liquid
/// cell count is target_cells when given, else the count in p0.
RunTrace run_to_equilibrium(const PhasePartition& p0, const SurfaceTensionSet& t, const SolverConfig& cfg,
                            std::optional<std::size_t> target_cells = std::nullopt,
                            const StepObserver& observer = {});

RunTrace run_with_time_refinement(const PhasePartition& p0, const SurfaceTensionSet& t, const SolverConfig& cfg,
                                  std::optional<std::size_t> target_cells = std::nullopt,
                                  const StepObserver& observer = {});

/// Dispatches on cfg.refine.
RunTrace solve(const PhasePartition& p0, const SurfaceTensionSet& t, const SolverConfig& cfg,
               std::optional<std::size_t> target_cells = std::nullopt, const StepObserver& observer = {});

/// Exactly n_steps calls of mbo_step with the given spectrum; no convergence test.
RunTrace evolve_fixed_steps(const PhasePartition& p0, const SurfaceTensionSet& t, const KernelSpectrum& ks,
                            int n_steps, const StepObserver& observer = {});

}  // namespace threshwet
