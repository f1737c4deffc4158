#include "threshwet/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>

#include "threshwet/dynamics.hpp"
#include "threshwet/experiments.hpp"
#include "threshwet/output.hpp"

namespace threshwet {

namespace {

namespace fs = std::filesystem;
using Pairs = std::vector<std::pair<std::string, std::string>>;

class Snapshots {
 public:
  Snapshots(fs::path dir, int every) : dir_(std::move(dir)), every_(every) {}

  void offer(int counter, const PhasePartition& p) {
    if (every_ > 0 && counter % every_ == 0) write(p);
  }

  void write(const PhasePartition& p) {
    if (last_ && *last_ == p) return;
    write_file(dir_ / snapshot_name(count_++), pgm_bytes(p));
    last_ = p;
  }

  int count() const { return count_; }

 private:
  fs::path dir_;
  int every_;
  int count_ = 0;
  std::optional<PhasePartition> last_;
};

SolverConfig solver_config(const RunConfig& c) {
  SolverConfig s;
  s.dt0 = c.dt;
  s.eps = c.eps;
  s.eps1 = c.eps1;
  s.dt_min = c.dt_min;
  s.max_iters = c.max_iters;
  s.refine = c.refine;
  s.validate();
  return s;
}

void add_grid(Pairs& d, const GridSpec& g) {
  d.emplace_back("grid_x0", format_number(g.x0));
  d.emplace_back("grid_y0", format_number(g.y0));
  d.emplace_back("grid_lx", format_number(g.lx));
  d.emplace_back("grid_ly", format_number(g.ly));
  d.emplace_back("grid_dx", format_number(g.dx()));
  d.emplace_back("grid_dy", format_number(g.dy()));
}

void add_trace(Pairs& d, const RunTrace& t) {
  d.emplace_back("iterations", std::to_string(t.records.size()));
  d.emplace_back("termination", to_string(t.termination));
  d.emplace_back("liquid_cells", std::to_string(t.liquid_cells));
  d.emplace_back("halvings", std::to_string(t.halvings));
}

std::string sweep_status(const HysteresisReport& r) {
  return r.aborted ? "aborted: " + r.abort_reason : "completed";
}

}  // namespace

RunOutcome execute(const RunConfig& c, std::ostream& log) {
  const fs::path dir(c.output_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw OutputError("cannot create output directory " + dir.string() + ": " + ec.message());

  RunOutcome out;
  Snapshots snaps(dir, c.snapshot_every);
  auto observer = [&](const StepRecord& r, const PhasePartition& p) { snaps.offer(r.iter, p); };
  Pairs& d = out.derived;
  Pairs& s = out.summary;

  if (c.scenario == "two_circles") {
    const TwoCircleReport rep = run_two_circles(c.nx, c.dt, c.t_end, observer);
    snaps.write(rep.trace.final_partition);
    write_file(dir / "trace.csv", trace_csv(rep.trace.records));
    add_grid(d, rep.grid);
    d.emplace_back("n_steps", std::to_string(rep.n_steps));
    add_trace(d, rep.trace);
    s.emplace_back("smaller_area", format_number(rep.smaller_area));
    s.emplace_back("exact_smaller_area", format_number(rep.exact_smaller_area));
    s.emplace_back("vol_err", format_number(rep.errors.vol_err));
    s.emplace_back("l1", format_number(rep.errors.l1));
    s.emplace_back("linf", format_number(rep.errors.linf));
  } else if (c.scenario == "two_semicircles") {
    const SemicircleReport rep = run_two_semicircles(c.nx, c.dt, c.t_end, c.mirror_check, observer);
    snaps.write(rep.trace.final_partition);
    write_file(dir / "trace.csv", trace_csv(rep.trace.records));
    add_grid(d, rep.grid);
    d.emplace_back("n_steps", std::to_string(rep.n_steps));
    d.emplace_back("wall_y", format_number(0.25));
    add_trace(d, rep.trace);
    s.emplace_back("smaller_area", format_number(rep.smaller_area));
    s.emplace_back("exact_smaller_area", format_number(rep.exact_smaller_area));
    s.emplace_back("l1", format_number(rep.errors.l1));
    s.emplace_back("linf", format_number(rep.errors.linf));
    s.emplace_back("seam_ratio", format_number(rep.seam_ratio));
    if (rep.mirror_checked) s.emplace_back("mirror_hausdorff", format_number(rep.mirror_hausdorff));
  } else if (c.scenario == "drop_spreading") {
    const DropReport rep = run_drop_spreading(c.nx, c.theta_y, solver_config(c), observer);
    snaps.write(rep.trace.final_partition);
    write_file(dir / "trace.csv", trace_csv(rep.trace.records));
    add_grid(d, rep.grid);
    d.emplace_back("wall_y", format_number(-std::numbers::pi / 4));
    d.emplace_back("reference_y", format_number(-std::numbers::pi / 4));
    d.emplace_back("exclusion_height", format_number(0.0));
    add_trace(d, rep.trace);
    s.emplace_back("l1", format_number(rep.errors.l1));
    s.emplace_back("linf", format_number(rep.errors.linf));
    s.emplace_back("left_angle", format_number(rep.contact.left_angle));
    s.emplace_back("right_angle", format_number(rep.contact.right_angle));
    s.emplace_back("seam_ratio", format_number(rep.seam_ratio));
  } else {
    HysteresisParams hp;
    if (c.scenario == "hysteresis_patterned") {
      hp.surface = PatternedSurface{c.k, c.theta_a, c.theta_b};
    } else {
      hp.surface = SawtoothSurface{c.k, c.alpha, c.theta_y};
    }
    hp.nx = c.nx;
    hp.ny = c.ny;
    hp.lx = c.periods * std::numbers::pi / (2 * c.k + 1);
    hp.depth = c.depth;
    hp.r0 = c.r0;
    hp.dt0 = c.dt;
    hp.refine = c.refine;
    hp.standoff = c.standoff;
    HysteresisSetup setup = make_hysteresis_setup(hp);
    setup.config = solver_config(c);
    const std::size_t delta = c.delta_v > 0.0 ? std::max<std::size_t>(1, cells_for_volume(setup.grid, c.delta_v))
                                              : default_delta_cells(setup);

    std::vector<StepRecord> records;
    auto append = [&records](const RunTrace& t) {
      for (StepRecord r : t.records) {
        r.iter = static_cast<int>(records.size()) + 1;
        records.push_back(r);
      }
    };
    const RunTrace relaxed = relax_initial(setup);
    append(relaxed);
    snaps.write(relaxed.final_partition);
    log << "relaxed initial drop: " << relaxed.records.size() << " iterations\n";

    int outer = 0;
    auto outer_observer = [&](const HysteresisRecord& r, const PhasePartition& p) {
      ++outer;
      snaps.offer(outer, p);
      log << "step " << outer << " volume " << format_number(r.volume) << " angles "
          << format_number(r.contact.left_angle) << ' ' << format_number(r.contact.right_angle) << '\n';
    };

    std::vector<HysteresisRecord> rows;
    PhasePartition current = relaxed.final_partition;
    add_grid(d, setup.grid);
    d.emplace_back("reference_y", format_number(setup.reference_y));
    d.emplace_back("exclusion_height", format_number(setup.exclusion_height));
    d.emplace_back("initial_volume", format_number(setup.v0));
    d.emplace_back("delta_cells", std::to_string(delta));
    d.emplace_back("delta_volume", format_number(static_cast<double>(delta) * setup.grid.cell_area()));
    d.emplace_back("relax_iterations", std::to_string(relaxed.records.size()));
    for (SweepDirection dir_ : {SweepDirection::advancing, SweepDirection::receding}) {
      const bool adv = dir_ == SweepDirection::advancing;
      if ((adv && c.direction == "receding") || (!adv && c.direction == "advancing")) continue;
      HysteresisSchedule sched;
      sched.direction = dir_;
      sched.delta_cells = delta;
      sched.n_outer = c.n_outer;
      const HysteresisReport rep = run_hysteresis(setup, sched, current, outer_observer);
      for (const RunTrace& t : rep.traces) append(t);
      const int offset = static_cast<int>(rows.size());
      for (HysteresisRecord r : rep.schedule.records) {
        r.step += offset;
        rows.push_back(r);
      }
      current = rep.final_partition;
      d.emplace_back(adv ? "advancing_status" : "receding_status", sweep_status(rep));
      d.emplace_back(adv ? "advancing_steps" : "receding_steps", std::to_string(rep.schedule.records.size()));
    }
    snaps.write(current);
    write_file(dir / "trace.csv", trace_csv(records));
    write_file(dir / "hysteresis.csv", hysteresis_csv(rows));
    d.emplace_back("iterations", std::to_string(records.size()));
    s.emplace_back("outer_steps", std::to_string(rows.size()));
    if (!rows.empty()) {
      s.emplace_back("final_volume", format_number(rows.back().volume));
      s.emplace_back("final_left_angle", format_number(rows.back().contact.left_angle));
      s.emplace_back("final_right_angle", format_number(rows.back().contact.right_angle));
    }
  }
  out.snapshots = snaps.count();
  d.emplace_back("snapshots", std::to_string(out.snapshots));
  write_file(dir / "meta.txt", meta_text(c, d));
  return out;
}

int run_cli(int argc, char** argv) {
  CLI::App app{"Threshold-dynamics wetting solver"};
  app.require_subcommand(1);

  std::string run_path;
  auto* run = app.add_subcommand("run", "Run the scenario described by a config file");
  run->add_option("config", run_path, "Config file")->required();

  std::string validate_path;
  auto* validate = app.add_subcommand("validate", "Parse a config file and print the resolved values");
  validate->add_option("config", validate_path, "Config file")->required();

  std::string name;
  std::map<std::string, std::string> overrides;
  auto* experiment = app.add_subcommand("experiment", "Run a named scenario with optional overrides");
  experiment->add_option("name", name, "Scenario")->required()->check(CLI::IsMember(scenario_names()));
  const std::vector<std::pair<std::string, std::string>> flags = {
      {"--nx", "nx"},           {"--ny", "ny"},
      {"--dt", "dt"},           {"--t-end", "t_end"},
      {"--mirror-check", "mirror_check"},
      {"--theta-y", "theta_y"}, {"--theta-a", "theta_a"},
      {"--theta-b", "theta_b"}, {"--alpha", "alpha"},
      {"--k", "k"},             {"--periods", "periods"},
      {"--depth", "depth"},     {"--r0", "r0"},
      {"--eps", "eps"},         {"--eps1", "eps1"},
      {"--dt-min", "dt_min"},   {"--max-iters", "max_iters"},
      {"--refine", "refine"},   {"--direction", "direction"},
      {"--delta-v", "delta_v"}, {"--n-outer", "n_outer"},
      {"--standoff", "standoff"},
      {"--output", "output_dir"},
      {"--snapshot-every", "snapshot_every"},
  };
  for (const auto& [flag, key] : flags) experiment->add_option(flag, overrides[key], key);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    RunConfig config;
    if (*validate) {
      config = load_config(validate_path);
      for (const auto& [k, v] : config.entries) std::cout << k << " = " << v << '\n';
      return 0;
    }
    if (*run) {
      config = load_config(run_path);
    } else {
      std::string text = "scenario = " + name + "\n";
      for (const auto& [key, value] : overrides) {
        if (!value.empty()) text += key + " = " + value + "\n";
      }
      config = parse_config(text);
    }
    const RunOutcome out = execute(config, std::cerr);
    for (const auto& [k, v] : out.summary) std::cout << k << " = " << v << '\n';
    std::cout << "outputs written to " << config.output_dir << '\n';
    return 0;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace threshwet
