#pragma once

#include <cstddef>
#include <functional>
#include <numbers>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "threshwet/grid.hpp"
#include "threshwet/measure.hpp"
#include "threshwet/solver.hpp"

namespace threshwet {

struct OracleResult {
  std::string name;
  std::string method;
  std::vector<std::pair<std::string, double>> inputs;
  std::vector<std::pair<std::string, double>> values;
  bool ok = true;
  std::string diagnostic;

  /// Throws std::out_of_range for an unknown key.
  double value(std::string_view key) const;
};

/// Volume-preserving curvature flow of two disjoint circles,
///   dr_i/dt = kappa_a - 1/r_i,  kappa_a = 2 / (r1 + r2),
/// integrated with classical RK4 at step <= h_max. Values: r1, r2, area1,
/// area2, area_drift, t_end. If a radius reaches zero first, ok = false and
/// the value t_vanish is added.
OracleResult two_circle_mcf_oracle(double r1, double r2, double t_end, double h_max = 1e-6);

/// Circular cap of area V meeting a flat wall at angle theta (measured inside
/// the cap). Values: radius, half_width, height, centre_offset (centre height
/// relative to the wall, -R cos(theta)).
OracleResult spherical_cap_oracle(double V, double theta);

/// Cells whose centre lies strictly inside the cap sitting on y = base_y,
/// centred at x = xc.
IndicatorField rasterize_cap(const GridSpec& grid, double xc, double base_y, double V, double theta);
std::vector<InterfaceCurve> cap_curves(double xc, double base_y, double V, double theta, int samples = 4096);

/// Arc (cx + r cos phi, cy + r sin phi) for phi in [phi0, phi1]; closed when
/// the arc is a full turn.
InterfaceCurve arc_curve(double cx, double cy, double r, double phi0, double phi1, int samples = 4096);

// --- Curvature-flow accuracy runs on the unit square -------------------------

struct TwoCircleReport {
  GridSpec grid;
  double dt = 0.0;
  int n_steps = 0;
  OracleResult oracle;
  double initial_smaller_area = 0.0;
  double smaller_area = 0.0;        // computed, at t_end
  double exact_smaller_area = 0.0;  // oracle
  ErrorNorms errors;                // vol_err = smaller_area - exact_smaller_area
  RunTrace trace;
};

/// Circles at (0.35, 0.35) r = 0.2 and (0.7, 0.7) r = 0.15 on [0,1]^2,
/// evolved for round(t_end / dt) steps.
TwoCircleReport run_two_circles(int resolution, double dt, double t_end = 0.02, const StepObserver& observer = {});

struct SemicircleReport {
  GridSpec grid;
  double dt = 0.0;
  int n_steps = 0;
  OracleResult oracle;
  double smaller_area = 0.0;
  double exact_smaller_area = 0.0;
  ErrorNorms errors;
  RunTrace trace;
  double seam_ratio = 0.0;  // seam distance / sqrt(dt), final state
  bool mirror_checked = false;
  double mirror_hausdorff = 0.0;  // length units
  RunTrace mirror_trace;
};

/// Semicircles centred at (0.3, 0.25) r = 0.2 and (0.8, 0.25) r = 0.15 on a
/// flat solid y < 0.25 with theta_Y = pi/2. With mirror_check, the same
/// circles are also evolved without a wall on [0,1] x [-0.25, 0.75] and the
/// reflected wall solution is compared with that run.
SemicircleReport run_two_semicircles(int resolution, double dt, double t_end = 0.02, bool mirror_check = true,
                                     const StepObserver& observer = {});

// --- Drop spreading to the Young angle ---------------------------------------

struct DropReport {
  GridSpec grid;
  double dt0 = 0.0;
  double theta_y = 0.0;
  bool refine = false;
  SolverConfig config;
  RunTrace trace;
  OracleResult cap;
  ErrorNorms errors;
  ContactMeasurement contact;
  double seam_ratio = 0.0;
};

/// Semicircle of radius pi/4 centred at (0, -pi/4) on a flat solid y < -pi/4,
/// domain [-pi/2, pi/2]^2. dt0 <= 0 selects 2 dx. The reference cap has the
/// discrete drop volume M dx dy.
DropReport run_drop_spreading(int resolution, double dt0, double theta_y, bool refine,
                              const StepObserver& observer = {});
DropReport run_drop_spreading(int resolution, double theta_y, const SolverConfig& cfg,
                              const StepObserver& observer = {});

/// Grid of the drop-spreading scenario.
GridSpec drop_grid(int resolution);

// --- Quasi-static hysteresis sweeps -------------------------------------------

struct PatternedSurface {
  int k = 4;
  double theta_a = std::numbers::pi / 5;
  double theta_b = 7 * std::numbers::pi / 10;
};

struct SawtoothSurface {
  int k = 4;
  double alpha = std::numbers::pi / 6;
  double theta_y = std::numbers::pi / 2;
};

using Surface = std::variant<PatternedSurface, SawtoothSurface>;

struct HysteresisParams {
  Surface surface = PatternedSurface{};
  int nx = 684;
  int ny = 480;
  double lx = 19 * std::numbers::pi / 9;  // x in [-lx/2, lx/2]; square cells
  double depth = 0.75;               // solid below the surface line
  double r0 = std::numbers::pi / 5;  // initial semicircle radius
  double dt0 = 0.004;
  bool refine = false;
  double standoff = 10.0;  // minimum distance to the domain edge, in units of sqrt(dt) at acceptance
};

struct HysteresisSetup {
  HysteresisParams params;
  GridSpec grid;
  SurfaceTensionSet tensions;
  PhasePartition initial;
  SolverConfig config;
  double reference_y = 0.0;
  double exclusion_height = 0.0;
  double v0 = 0.0;
};

HysteresisSetup make_hysteresis_setup(const HysteresisParams& params);

/// Cell count for the default volume increment V0 / 200 (at least one cell).
std::size_t default_delta_cells(const HysteresisSetup& setup);

enum class SweepDirection { advancing, receding };

struct HysteresisRecord {
  int step = 0;
  std::size_t cells = 0;
  double volume = 0.0;
  ContactMeasurement contact;
  double energy = 0.0;
  Termination termination = Termination::converged;
  int iterations = 0;
  double edge_distance = 0.0;
};

struct HysteresisSchedule {
  SweepDirection direction = SweepDirection::advancing;
  std::size_t delta_cells = 1;
  int n_outer = 0;
  std::vector<HysteresisRecord> records;
};

struct HysteresisReport {
  HysteresisSchedule schedule;
  PhasePartition start;
  PhasePartition final_partition;
  std::vector<RunTrace> traces;  // one per outer step; final partitions dropped
  bool aborted = false;
  std::string abort_reason;
};

using OuterStepObserver = std::function<void(const HysteresisRecord&, const PhasePartition&)>;

/// Equilibrium of the setup's initial drop at its own volume.
RunTrace relax_initial(const HysteresisSetup& setup);

/// Each outer step changes the liquid cell count by +-delta_cells and
/// re-solves from the previous equilibrium. The sweep stops early with a
/// diagnostic if the drop detaches, the liquid comes within standoff * sqrt(dt)
/// of the domain edge (dt of the accepted equilibrium), or the volume would
/// drop to zero. The offending step is not recorded and final_partition is
/// the last accepted equilibrium.
HysteresisReport run_hysteresis(const HysteresisSetup& setup, HysteresisSchedule schedule,
                                const PhasePartition& start, const OuterStepObserver& observer = {});

/// Distance from liquid cell centres to the domain boundary.
double edge_distance(const PhasePartition& p);

}  // namespace threshwet
