#include "threshwet/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "threshwet/dynamics.hpp"

namespace threshwet {

namespace {

constexpr double pi = std::numbers::pi;

template <class Inside>
IndicatorField raster(const GridSpec& g, Inside inside) {
  IndicatorField u(g);
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) u(i, j) = inside(g.cell_x(i), g.cell_y(j)) ? 1 : 0;
  }
  return u;
}

IndicatorField union_of(IndicatorField a, const IndicatorField& b) {
  for (std::size_t n = 0; n < a.values.size(); ++n) a.values[n] |= b.values[n];
  return a;
}

/// Area of the smaller of the two largest 4-connected liquid components.
double smaller_component_area(const IndicatorField& liquid) {
  const auto comps = connected_components(liquid);
  std::vector<std::size_t> counts;
  for (const auto& c : comps) counts.push_back(c.count());
  std::sort(counts.rbegin(), counts.rend());
  if (counts.size() < 2) return 0.0;
  return static_cast<double>(counts[1]) * liquid.grid.cell_area();
}

}  // namespace

double OracleResult::value(std::string_view key) const {
  for (const auto& [k, v] : values) {
    if (k == key) return v;
  }
  throw std::out_of_range("OracleResult: no value named " + std::string(key));
}

OracleResult two_circle_mcf_oracle(double r1, double r2, double t_end, double h_max) {
  if (!(r1 > 0.0) || !(r2 > 0.0)) throw std::invalid_argument("two_circle_mcf_oracle: radii must be positive");
  if (!(t_end >= 0.0) || !(h_max > 0.0)) throw std::invalid_argument("two_circle_mcf_oracle: bad time parameters");
  OracleResult out;
  out.name = "two_circle_mcf";
  out.method = "RK4 on dr_i/dt = 2/(r1+r2) - 1/r_i";
  out.inputs = {{"r1", r1}, {"r2", r2}, {"t_end", t_end}, {"h_max", h_max}};

  auto rhs = [](double a, double b) {
    const double ka = 2.0 / (a + b);
    return std::pair{ka - 1.0 / a, ka - 1.0 / b};
  };
  const long n = std::max(1L, static_cast<long>(std::ceil(t_end / h_max)));
  const double h = t_end / static_cast<double>(n);
  const double area0 = pi * (r1 * r1 + r2 * r2);
  double a = r1, b = r2;
  for (long s = 0; s < n && t_end > 0.0; ++s) {
    const auto [k1a, k1b] = rhs(a, b);
    const auto [k2a, k2b] = rhs(a + 0.5 * h * k1a, b + 0.5 * h * k1b);
    const auto [k3a, k3b] = rhs(a + 0.5 * h * k2a, b + 0.5 * h * k2b);
    const auto [k4a, k4b] = rhs(a + h * k3a, b + h * k3b);
    const double na = a + h / 6.0 * (k1a + 2 * k2a + 2 * k3a + k4a);
    const double nb = b + h / 6.0 * (k1b + 2 * k2b + 2 * k3b + k4b);
    if (!(na > 0.0) || !(nb > 0.0) || !std::isfinite(na) || !std::isfinite(nb)) {
      out.ok = false;
      out.diagnostic = "a circle vanished before t_end";
      out.values.emplace_back("t_vanish", (s + 1) * h);
      break;
    }
    a = na;
    b = nb;
  }
  out.values.emplace_back("r1", a);
  out.values.emplace_back("r2", b);
  out.values.emplace_back("area1", pi * a * a);
  out.values.emplace_back("area2", pi * b * b);
  out.values.emplace_back("area_drift", pi * (a * a + b * b) - area0);
  out.values.emplace_back("t_end", t_end);
  return out;
}

OracleResult spherical_cap_oracle(double V, double theta) {
  if (!(V > 0.0)) throw std::invalid_argument("spherical_cap_oracle: V must be positive");
  if (!(theta > 0.0 && theta < pi)) throw std::invalid_argument("spherical_cap_oracle: theta must lie in (0, pi)");
  const double R = std::sqrt(V / (theta - std::sin(theta) * std::cos(theta)));
  OracleResult out;
  out.name = "circular_cap";
  out.method = "closed form, area R^2 (theta - sin cos)";
  out.inputs = {{"V", V}, {"theta", theta}};
  out.values = {{"radius", R},
                {"half_width", R * std::sin(theta)},
                {"height", R * (1.0 - std::cos(theta))},
                {"centre_offset", -R * std::cos(theta)}};
  return out;
}

IndicatorField rasterize_cap(const GridSpec& grid, double xc, double base_y, double V, double theta) {
  const OracleResult cap = spherical_cap_oracle(V, theta);
  const double R = cap.value("radius");
  const double cy = base_y + cap.value("centre_offset");
  return raster(grid, [&](double x, double y) {
    return y > base_y && (x - xc) * (x - xc) + (y - cy) * (y - cy) < R * R;
  });
}

InterfaceCurve arc_curve(double cx, double cy, double r, double phi0, double phi1, int samples) {
  if (samples < 2) throw std::invalid_argument("arc_curve: need at least two samples");
  InterfaceCurve c;
  const bool full = std::abs(std::abs(phi1 - phi0) - 2 * pi) < 1e-12;
  const int n = full ? samples : samples + 1;
  for (int s = 0; s < n; ++s) {
    const double phi = phi0 + (phi1 - phi0) * s / samples;
    c.points.push_back({cx + r * std::cos(phi), cy + r * std::sin(phi)});
  }
  c.closed = full;
  return c;
}

std::vector<InterfaceCurve> cap_curves(double xc, double base_y, double V, double theta, int samples) {
  const OracleResult cap = spherical_cap_oracle(V, theta);
  const double R = cap.value("radius");
  const double cy = base_y + cap.value("centre_offset");
  // Polar angle from the vertical, sweeping the arc above the wall.
  return {arc_curve(xc, cy, R, pi / 2 - theta, pi / 2 + theta, samples)};
}

TwoCircleReport run_two_circles(int resolution, double dt, double t_end, const StepObserver& observer) {
  TwoCircleReport rep;
  rep.grid = make_grid(resolution, resolution, 0.0, 0.0, 1.0, 1.0);
  rep.dt = dt;
  rep.n_steps = static_cast<int>(std::lround(t_end / dt));
  const IndicatorField liquid =
      union_of(disk_indicator(rep.grid, 0.35, 0.35, 0.2), disk_indicator(rep.grid, 0.7, 0.7, 0.15));
  const PhasePartition p0 = make_partition(liquid, {});
  rep.initial_smaller_area = smaller_component_area(p0.liquid);
  const KernelSpectrum ks(rep.grid, dt);
  rep.trace = evolve_fixed_steps(p0, SurfaceTensionSet{}, ks, rep.n_steps, observer);

  rep.oracle = two_circle_mcf_oracle(0.2, 0.15, rep.n_steps * dt);
  const double ra = rep.oracle.value("r1");
  const double rb = rep.oracle.value("r2");
  rep.exact_smaller_area = rep.oracle.value("area2");
  rep.smaller_area = smaller_component_area(rep.trace.final_partition.liquid);

  const IndicatorField exact = raster(rep.grid, [&](double x, double y) {
    return std::hypot(x - 0.35, y - 0.35) < ra || std::hypot(x - 0.7, y - 0.7) < rb;
  });
  const std::vector<InterfaceCurve> exact_curves{arc_curve(0.35, 0.35, ra, 0.0, 2 * pi),
                                                 arc_curve(0.7, 0.7, rb, 0.0, 2 * pi)};
  rep.errors.l1 = symmetric_difference_area(rep.trace.final_partition.liquid, exact);
  rep.errors.linf = hausdorff_distance(extract_interface(rep.trace.final_partition), exact_curves);
  rep.errors.vol_err = rep.smaller_area - rep.exact_smaller_area;
  return rep;
}

SemicircleReport run_two_semicircles(int resolution, double dt, double t_end, bool mirror_check,
                                     const StepObserver& observer) {
  if (resolution % 4 != 0) throw std::invalid_argument("run_two_semicircles: resolution must be a multiple of 4");
  constexpr double wall = 0.25;
  SemicircleReport rep;
  rep.grid = make_grid(resolution, resolution, 0.0, 0.0, 1.0, 1.0);
  rep.dt = dt;
  rep.n_steps = static_cast<int>(std::lround(t_end / dt));
  const IndicatorField solid = flat_solid(rep.grid, wall);
  const IndicatorField liquid = union_of(half_disk_indicator(rep.grid, 0.3, wall, 0.2, wall),
                                         half_disk_indicator(rep.grid, 0.8, wall, 0.15, wall));
  const PhasePartition p0 = make_partition(liquid, {solid});
  const SurfaceTensionSet t = SurfaceTensionSet::from_young_angles({pi / 2});
  const KernelSpectrum ks(rep.grid, dt);
  rep.trace = evolve_fixed_steps(p0, t, ks, rep.n_steps, observer);
  const PhasePartition& fin = rep.trace.final_partition;

  rep.oracle = two_circle_mcf_oracle(0.2, 0.15, rep.n_steps * dt);
  const double ra = rep.oracle.value("r1");
  const double rb = rep.oracle.value("r2");
  rep.exact_smaller_area = 0.5 * rep.oracle.value("area2");
  rep.smaller_area = smaller_component_area(fin.liquid);
  const IndicatorField exact = raster(rep.grid, [&](double x, double y) {
    return y > wall && (std::hypot(x - 0.3, y - wall) < ra || std::hypot(x - 0.8, y - wall) < rb);
  });
  const std::vector<InterfaceCurve> exact_curves{arc_curve(0.3, wall, ra, 0.0, pi),
                                                 arc_curve(0.8, wall, rb, 0.0, pi)};
  rep.errors.l1 = symmetric_difference_area(fin.liquid, exact);
  rep.errors.linf = hausdorff_distance(extract_interface(fin), exact_curves);
  rep.errors.vol_err = rep.smaller_area - rep.exact_smaller_area;
  rep.seam_ratio = seam_distance(fin) / std::sqrt(dt);

  if (mirror_check) {
    const GridSpec full = make_grid(resolution, resolution, 0.0, -wall, 1.0, 1.0);
    const IndicatorField circles =
        union_of(disk_indicator(full, 0.3, wall, 0.2), disk_indicator(full, 0.8, wall, 0.15));
    const KernelSpectrum ks_full(full, dt);
    rep.mirror_trace = evolve_fixed_steps(make_partition(circles, {}), SurfaceTensionSet{}, ks_full, rep.n_steps);

    // Row j of the full grid sits at the same height as row j - n/4 of the wall
    // grid; rows below the wall line reflect to 3n/4 - 1 - j.
    const int n = resolution;
    IndicatorField mirrored(full);
    for (int j = 0; j < n; ++j) {
      const int js = j >= n / 2 ? j - n / 4 : 3 * n / 4 - 1 - j;
      for (int i = 0; i < n; ++i) mirrored(i, j) = fin.liquid(i, js);
    }
    rep.mirror_hausdorff =
        hausdorff_distance(extract_interface(mirrored), extract_interface(rep.mirror_trace.final_partition.liquid));
    rep.mirror_checked = true;
  }
  return rep;
}

GridSpec drop_grid(int resolution) { return make_grid(resolution, resolution, -pi / 2, -pi / 2, pi, pi); }

DropReport run_drop_spreading(int resolution, double dt0, double theta_y, bool refine, const StepObserver& observer) {
  const GridSpec g = drop_grid(resolution);
  return run_drop_spreading(resolution, theta_y,
                            SolverConfig::defaults(g, dt0 > 0.0 ? dt0 : 2.0 * g.dx(), refine), observer);
}

DropReport run_drop_spreading(int resolution, double theta_y, const SolverConfig& cfg, const StepObserver& observer) {
  DropReport rep;
  rep.grid = drop_grid(resolution);
  rep.dt0 = cfg.dt0;
  rep.theta_y = theta_y;
  rep.refine = cfg.refine;
  rep.config = cfg;
  const double wall = -pi / 4;
  const IndicatorField solid = flat_solid(rep.grid, wall);
  const IndicatorField liquid = half_disk_indicator(rep.grid, 0.0, wall, pi / 4, wall);
  const PhasePartition p0 = make_partition(liquid, {solid});
  const SurfaceTensionSet t = SurfaceTensionSet::from_young_angles({theta_y});
  rep.trace = solve(p0, t, cfg, std::nullopt, observer);

  const double v = static_cast<double>(rep.trace.liquid_cells) * rep.grid.cell_area();
  rep.cap = spherical_cap_oracle(v, theta_y);
  const ReferenceShape ref{rasterize_cap(rep.grid, 0.0, wall, v, theta_y), cap_curves(0.0, wall, v, theta_y), v};
  rep.errors = error_norms(rep.trace.final_partition, ref);
  rep.contact = fit_contact(extract_interface(rep.trace.final_partition), wall, 0.0);
  rep.seam_ratio = seam_distance(rep.trace.final_partition) / std::sqrt(rep.dt0);
  return rep;
}

HysteresisSetup make_hysteresis_setup(const HysteresisParams& params) {
  if (!(params.r0 > 0.0) || !(params.depth > 0.0) || !(params.lx > 0.0) || !(params.dt0 > 0.0)) {
    throw std::invalid_argument("make_hysteresis_setup: r0, depth, lx and dt0 must be positive");
  }
  HysteresisSetup s;
  s.params = params;
  const double dx = params.lx / params.nx;
  s.grid = make_grid(params.nx, params.ny, -0.5 * params.lx, -params.depth, params.lx, params.ny * dx);
  constexpr double surface_y = 0.0;
  s.reference_y = surface_y;

  std::vector<IndicatorField> solids;
  if (const auto* pat = std::get_if<PatternedSurface>(&params.surface)) {
    PatternedSolid ps = patterned_solid(s.grid, surface_y, pat->k);
    solids = {std::move(ps.material_a), std::move(ps.material_b)};
    s.tensions = SurfaceTensionSet::from_young_angles({pat->theta_a, pat->theta_b});
  } else {
    const auto& saw = std::get<SawtoothSurface>(params.surface);
    const double h = sawtooth_tooth_height(saw.k, saw.alpha);
    solids = {sawtooth_solid(s.grid, surface_y - h, saw.k, saw.alpha)};
    s.tensions = SurfaceTensionSet::from_young_angles({saw.theta_y});
    s.exclusion_height = h;
  }
  const IndicatorField drop = half_disk_indicator(s.grid, 0.0, surface_y, params.r0, surface_y);
  s.initial = make_partition(drop, std::move(solids));
  s.v0 = volume(s.initial.liquid);
  s.config = SolverConfig::defaults(s.grid, params.dt0, params.refine);
  return s;
}

std::size_t default_delta_cells(const HysteresisSetup& setup) {
  return std::max<std::size_t>(1, cells_for_volume(setup.grid, setup.v0 / 200.0));
}

RunTrace relax_initial(const HysteresisSetup& setup) { return solve(setup.initial, setup.tensions, setup.config); }

double edge_distance(const PhasePartition& p) {
  const GridSpec& g = p.grid();
  double best = std::numeric_limits<double>::infinity();
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      if (!p.liquid(i, j)) continue;
      const double x = g.cell_x(i);
      const double y = g.cell_y(j);
      best = std::min({best, x - g.x0, g.x0 + g.lx - x, y - g.y0, g.y0 + g.ly - y});
    }
  }
  return best;
}

namespace {

bool touches_solid(const PhasePartition& p) {
  const GridSpec& g = p.grid();
  const IndicatorField solid = p.solid_union();
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      if (!p.liquid(i, j)) continue;
      if ((i > 0 && solid(i - 1, j)) || (i + 1 < g.nx && solid(i + 1, j)) || (j > 0 && solid(i, j - 1)) ||
          (j + 1 < g.ny && solid(i, j + 1))) {
        return true;
      }
    }
  }
  return false;
}

}  // namespace

HysteresisReport run_hysteresis(const HysteresisSetup& setup, HysteresisSchedule schedule,
                                const PhasePartition& start, const OuterStepObserver& observer) {
  if (schedule.delta_cells < 1) throw std::invalid_argument("run_hysteresis: delta_cells must be >= 1");
  if (schedule.n_outer < 0) throw std::invalid_argument("run_hysteresis: n_outer must be >= 0");
  HysteresisReport rep;
  rep.start = start;
  schedule.records.clear();
  const double cell = setup.grid.cell_area();
  PhasePartition current = start;

  for (int step = 1; step <= schedule.n_outer; ++step) {
    const std::size_t m = current.liquid.count();
    if (schedule.direction == SweepDirection::receding && m <= schedule.delta_cells) {
      rep.aborted = true;
      rep.abort_reason = "volume exhausted at step " + std::to_string(step);
      break;
    }
    const std::size_t target =
        schedule.direction == SweepDirection::advancing ? m + schedule.delta_cells : m - schedule.delta_cells;
    RunTrace tr = solve(current, setup.tensions, setup.config, target);
    PhasePartition next = std::move(tr.final_partition);
    tr.final_partition = PhasePartition{};

    HysteresisRecord rec;
    rec.step = step;
    rec.cells = target;
    rec.volume = static_cast<double>(target) * cell;
    rec.termination = tr.termination;
    rec.iterations = static_cast<int>(tr.records.size());
    rec.energy = tr.records.empty() ? 0.0 : tr.records.back().energy;
    rec.contact = fit_contact(extract_interface(next), setup.reference_y, setup.exclusion_height);
    rec.edge_distance = edge_distance(next);

    // A rejected step is not recorded; the sweep ends on the last valid state.
    if (!rec.contact.attached || !touches_solid(next)) {
      rep.aborted = true;
      rep.abort_reason = "drop detached from the solid at step " + std::to_string(step);
      break;
    }
    const double final_dt = tr.records.empty() ? setup.params.dt0 : tr.records.back().dt;
    const double min_edge = setup.params.standoff * std::sqrt(final_dt);
    if (rec.edge_distance < min_edge) {
      rep.aborted = true;
      rep.abort_reason = "liquid within " + std::to_string(rec.edge_distance) + " of the domain edge (limit " +
                         std::to_string(min_edge) + ") at step " + std::to_string(step);
      break;
    }
    current = std::move(next);
    schedule.records.push_back(rec);
    rep.traces.push_back(std::move(tr));
    if (observer) observer(rec, current);
  }
  rep.schedule = std::move(schedule);
  rep.final_partition = std::move(current);
  return rep;
}

}  // namespace threshwet
