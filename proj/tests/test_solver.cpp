#include <doctest.h>

#include <cmath>
#include <numbers>

#include "threshwet/solver.hpp"

using namespace threshwet;
constexpr double pi = std::numbers::pi;

namespace {

struct DropSetup {
  GridSpec grid;
  PhasePartition p0;
};

DropSetup drop(int n) {
  DropSetup d;
  d.grid = make_grid(n, n, -pi / 2, -pi / 2, pi, pi);
  const double wall = -pi / 4;
  d.p0 = make_partition(half_disk_indicator(d.grid, 0.0, wall, pi / 4, wall), {flat_solid(d.grid, wall)});
  return d;
}

void check_trace(const RunTrace& tr) {
  REQUIRE(!tr.records.empty());
  const double v = tr.records.front().volume;
  for (std::size_t k = 0; k < tr.records.size(); ++k) {
    const StepRecord& r = tr.records[k];
    CHECK(r.volume == v);
    if (!r.adjusts_volume) CHECK(r.energy <= r.energy_before + 1e-10 * std::abs(r.energy_before));
    if (k > 0 && tr.records[k - 1].dt == r.dt && !r.adjusts_volume) {
      CHECK(r.energy <= tr.records[k - 1].energy + 1e-10 * std::abs(tr.records[k - 1].energy));
    }
  }
  CHECK(tr.final_partition.liquid.count() == tr.liquid_cells);
}

}  // namespace

TEST_CASE("config validation") {
  const GridSpec g = make_grid(64, 64, 0, 0, 1, 1);
  const SolverConfig c = SolverConfig::defaults(g, 0.01);
  CHECK(c.eps == g.cell_area());
  CHECK(c.eps1 == g.cell_area());
  CHECK(c.dt_min == g.dx() * g.dx());
  CHECK(c.max_iters == 10000);
  CHECK_NOTHROW(c.validate());
  SolverConfig bad = c;
  bad.dt_min = 0.1;
  CHECK_THROWS(bad.validate());
  bad = c;
  bad.eps = 0.0;
  CHECK_THROWS(bad.validate());
}

TEST_CASE("right-angle semicircle settles quickly and stays put") {
  DropSetup d = drop(128);
  const SurfaceTensionSet t = SurfaceTensionSet::from_young_angles({pi / 2});
  const RunTrace tr = run_to_equilibrium(d.p0, t, SolverConfig::defaults(d.grid, 4 * d.grid.dx()));
  CHECK(tr.termination == Termination::converged);
  CHECK(tr.records.size() < 30);
  check_trace(tr);
  CHECK(symmetric_difference_count(tr.final_partition.liquid, d.p0.liquid) < 400);

  // A converged state is a fixed point: one iteration, no change.
  const RunTrace again = run_to_equilibrium(tr.final_partition, t, SolverConfig::defaults(d.grid, 4 * d.grid.dx()));
  CHECK(again.records.size() == 1);
  CHECK(again.records[0].sym_diff == 0.0);
  CHECK(again.final_partition == tr.final_partition);
}

TEST_CASE("spreading drop energy decreases to convergence") {
  DropSetup d = drop(128);
  const SurfaceTensionSet t = SurfaceTensionSet::from_young_angles({pi / 3});
  const RunTrace tr = run_to_equilibrium(d.p0, t, SolverConfig::defaults(d.grid, 2 * d.grid.dx()));
  CHECK(tr.termination == Termination::converged);
  check_trace(tr);
  CHECK(tr.records.back().energy < tr.records.front().energy_before);
}

TEST_CASE("time refinement") {
  DropSetup d = drop(128);
  const SurfaceTensionSet t = SurfaceTensionSet::from_young_angles({pi / 3});
  const SolverConfig cfg = SolverConfig::defaults(d.grid, 2 * d.grid.dx(), true);
  const RunTrace tr = run_with_time_refinement(d.p0, t, cfg);
  CHECK((tr.termination == Termination::refined_converged || tr.termination == Termination::dt_floor));
  CHECK(tr.halvings >= 1);
  check_trace(tr);
  for (std::size_t k = 1; k < tr.records.size(); ++k) CHECK(tr.records[k].dt <= tr.records[k - 1].dt);
  CHECK(tr.records.back().dt >= cfg.dt_min);

  // Restarting at the final dt from the refined equilibrium stops after one check.
  SolverConfig last = cfg;
  last.dt0 = tr.records.back().dt;
  last.dt_min = std::min(last.dt_min, last.dt0);
  const RunTrace again = run_with_time_refinement(tr.final_partition, t, last);
  CHECK(again.halvings <= 1);

  const RunTrace twice = solve(d.p0, t, cfg);
  REQUIRE(twice.records.size() == tr.records.size());
  for (std::size_t k = 0; k < tr.records.size(); ++k) {
    CHECK(twice.records[k].energy == tr.records[k].energy);
    CHECK(twice.records[k].delta == tr.records[k].delta);
  }
  CHECK(twice.final_partition == tr.final_partition);
}

TEST_CASE("volume target applies on the first step") {
  DropSetup d = drop(64);
  const SurfaceTensionSet t = SurfaceTensionSet::from_young_angles({1.2});
  const std::size_t target = d.p0.liquid.count() + 40;
  const RunTrace tr = run_to_equilibrium(d.p0, t, SolverConfig::defaults(d.grid, 4 * d.grid.dx()), target);
  CHECK(tr.records.front().adjusts_volume);
  CHECK(tr.final_partition.liquid.count() == target);
  for (std::size_t k = 1; k < tr.records.size(); ++k) CHECK(!tr.records[k].adjusts_volume);
}

TEST_CASE("fixed steps") {
  DropSetup d = drop(64);
  const SurfaceTensionSet t = SurfaceTensionSet::from_young_angles({1.2});
  const KernelSpectrum ks(d.grid, 0.01);
  CHECK_THROWS(evolve_fixed_steps(d.p0, t, ks, 0));
  int seen = 0;
  const RunTrace tr = evolve_fixed_steps(d.p0, t, ks, 7, [&](const StepRecord&, const PhasePartition&) { ++seen; });
  CHECK(tr.records.size() == 7);
  CHECK(seen == 7);
  CHECK(tr.termination == Termination::fixed_steps);
  check_trace(tr);
}

TEST_CASE("max_iters stops the loop") {
  DropSetup d = drop(64);
  SolverConfig cfg = SolverConfig::defaults(d.grid, 2 * d.grid.dx());
  cfg.max_iters = 2;
  const RunTrace tr = run_to_equilibrium(d.p0, SurfaceTensionSet::from_young_angles({pi / 4}), cfg);
  CHECK(tr.records.size() == 2);
  CHECK(tr.termination == Termination::max_iters);
}
