#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "threshwet/cli.hpp"
#include "threshwet/config.hpp"
#include "threshwet/output.hpp"

using namespace threshwet;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int error_line(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.line();
  }
  return -1;
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("threshwet_test_" + name);
  fs::remove_all(p);
  return p;
}

int count_lines(const std::string& s) { return static_cast<int>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST_CASE("config parsing") {
  const RunConfig c = parse_config("scenario = drop_spreading\nnx = 512\ntheta_y = 1.0471975512");
  CHECK(c.scenario == "drop_spreading");
  CHECK(c.nx == 512);
  CHECK(c.theta_y == 1.0471975512);
  CHECK(c.refine);
  CHECK(c.dt == doctest::Approx(2 * std::numbers::pi / 512));
  CHECK(c.eps == doctest::Approx(std::pow(std::numbers::pi / 512, 2)));

  CHECK(error_line("theta_y = 3.5") == 1);
  CHECK(error_line("# comment\nscenario =\n") == 2);
  CHECK(error_line("nx = 64\n") == 1);
  CHECK(error_line("scenario = two_circles\n\nbogus = 1\n") == 3);
  CHECK(error_line("scenario = two_circles\nnx = 64\nnx = 128\n") == 3);
  CHECK(error_line("scenario = two_circles\ntheta_y = 1.0\n") == 2);
  CHECK(error_line("scenario = drop_spreading\ndt = -1\n") == 2);
  CHECK(error_line("scenario = drop_spreading\nnx = abc\n") == 2);
  CHECK(error_line("scenario = two_semicircles\nnx = 130\n") == 2);
  CHECK(error_line("scenario = hysteresis_patterned\nperiods = 4\n") == 2);
  CHECK(error_line("scenario = hysteresis_sawtooth\n  alpha = 2.0  # too steep\n") == 2);
  CHECK(error_line("scenario = warp_drive\n") == 1);
  CHECK(error_line("scenario two_circles\n") == 1);

  const RunConfig h = parse_config("scenario = hysteresis_sawtooth  # trailing comment\n");
  CHECK(h.theta_y == doctest::Approx(std::numbers::pi / 2));
  bool has_alpha = false, has_theta_a = false;
  for (const auto& [k, v] : h.entries) {
    has_alpha |= k == "alpha";
    has_theta_a |= k == "theta_a";
  }
  CHECK(has_alpha);
  CHECK(!has_theta_a);
  CHECK(format_number(0.1) == "0.10000000000000001");
}

TEST_CASE("output formats") {
  const GridSpec g{2, 4, 0, 0, 1, 1};
  IndicatorField solid(g), liquid(g);
  for (int i = 0; i < 2; ++i) {
    solid(i, 0) = solid(i, 1) = 1;
    liquid(i, 2) = liquid(i, 3) = 1;
  }
  const PhasePartition p = make_partition(liquid, {solid});
  const std::string expect = std::string("P5\n2 4\n255\n") + std::string(4, '\0') + std::string(4, '\xff');
  CHECK(pgm_bytes(p) == expect);

  IndicatorField top(g);
  top(0, 3) = 1;
  const PhasePartition mixed = make_partition(top, {solid});
  const std::string bytes = pgm_bytes(mixed);
  const std::string body{'\x00', '\x80', '\x80', '\x80', '\xff', '\xff', '\xff', '\xff'};
  CHECK(bytes.substr(bytes.size() - 8) == body);

  CHECK(trace_csv({}) == "iter,dt,energy,delta,sym_diff,volume\n");
  CHECK(hysteresis_csv({}) == "step,volume,left_x,right_x,left_angle,right_angle,energy\n");
  std::vector<HysteresisRecord> rows(5);
  CHECK(count_lines(hysteresis_csv(rows)) == 6);
  CHECK(snapshot_name(7) == "state_0007.pgm");
  CHECK_THROWS_AS(write_file("/nonexistent_dir/x/y.csv", "a"), OutputError);
}

TEST_CASE("run writes deterministic outputs") {
  const fs::path a = scratch("det_a"), b = scratch("det_b");
  const std::string base = "scenario = two_circles\nnx = 128\ndt = 0.002\nsnapshot_every = 3\n";
  std::ostringstream log;
  const RunOutcome ra = execute(parse_config(base + "output_dir = " + a.string() + "\n"), log);
  execute(parse_config(base + "output_dir = " + b.string() + "\n"), log);
  CHECK(ra.snapshots >= 2);
  CHECK(slurp(a / "trace.csv") == slurp(b / "trace.csv"));
  CHECK(count_lines(slurp(a / "trace.csv")) == 11);
  for (int k = 0; k < ra.snapshots; ++k) {
    CHECK(fs::exists(a / snapshot_name(k)));
    CHECK(slurp(a / snapshot_name(k)) == slurp(b / snapshot_name(k)));
  }
  const std::string meta = slurp(a / "meta.txt");
  for (const char* key : {"scenario = two_circles", "nx = 128", "t_end = 0.02", "snapshot_every = 3", "grid_dx = "}) {
    CHECK(meta.find(key) != std::string::npos);
  }
  fs::remove_all(a);
  fs::remove_all(b);
}

TEST_CASE("hysteresis run writes one row per outer step") {
  const fs::path d = scratch("hys");
  const std::string cfg =
      "scenario = hysteresis_patterned\nnx = 180\nny = 120\nperiods = 5\ndepth = 0.3\nr0 = 0.35\n"
      "dt = 0.002\ndirection = advancing\nn_outer = 3\nstandoff = 2\ndelta_v = 0.004\noutput_dir = " +
      d.string() + "\n";
  std::ostringstream log;
  execute(parse_config(cfg), log);
  CHECK(count_lines(slurp(d / "hysteresis.csv")) == 4);
  const std::string meta = slurp(d / "meta.txt");
  CHECK(meta.find("exclusion_height = 0") != std::string::npos);
  CHECK(meta.find("advancing_status = completed") != std::string::npos);
  fs::remove_all(d);
}

TEST_CASE("command line") {
  const fs::path d = scratch("cmd");
  fs::create_directories(d);
  {
    std::ofstream(d / "bad.cfg") << "scenario = drop_spreading\ntheta_y = 3.5\n";
    std::ofstream(d / "good.cfg") << "scenario = two_circles\nnx = 32\ndt = 0.005\noutput_dir = " << (d / "out").string()
                                  << "\n";
  }
  auto call = [](std::vector<std::string> args) {
    std::vector<char*> argv;
    for (auto& s : args) argv.push_back(s.data());
    return run_cli(static_cast<int>(argv.size()), argv.data());
  };
  CHECK(call({"threshwet", "validate", (d / "bad.cfg").string()}) != 0);
  CHECK(call({"threshwet", "validate", (d / "good.cfg").string()}) == 0);
  CHECK(call({"threshwet", "run", (d / "good.cfg").string()}) == 0);
  CHECK(fs::exists(d / "out" / "trace.csv"));
  CHECK(call({"threshwet", "experiment", "two_circles", "--nx", "32", "--dt", "0.005", "--output",
              (d / "exp").string()}) == 0);
  CHECK(slurp(d / "exp" / "trace.csv") == slurp(d / "out" / "trace.csv"));
  CHECK(call({"threshwet", "experiment", "two_circles", "--theta-y", "1.0"}) != 0);
  CHECK(call({"threshwet", "experiment", "nonsense"}) != 0);
  CHECK(call({"threshwet"}) != 0);
  CHECK(call({"threshwet", "run", (d / "missing.cfg").string()}) != 0);
  fs::remove_all(d);
}
