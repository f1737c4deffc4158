#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace threshwet {

/// Parse failure. line is 1-based; a key that is absent altogether reports
/// the line count of the input.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(int line, const std::string& message);
  int line() const { return line_; }

 private:
  int line_;
};

struct RunConfig {
  std::string scenario;  // two_circles | two_semicircles | drop_spreading | hysteresis_patterned | hysteresis_sawtooth

  int nx = 0;
  int ny = 0;
  double dt = 0.0;  // fixed step, or initial step for the equilibrium solvers
  double t_end = 0.0;
  bool mirror_check = false;

  double theta_y = 0.0;
  double theta_a = 0.0;
  double theta_b = 0.0;
  double alpha = 0.0;
  int k = 0;

  double eps = 0.0;
  double eps1 = 0.0;
  double dt_min = 0.0;
  int max_iters = 0;
  bool refine = false;

  int periods = 0;
  double depth = 0.0;
  double r0 = 0.0;
  double standoff = 0.0;
  std::string direction;  // advancing | receding | both
  double delta_v = 0.0;   // 0 selects V0 / 200
  int n_outer = 0;

  std::string output_dir;
  int snapshot_every = 0;  // 0: final state only

  /// Every key that applies to the scenario with its resolved value, in a
  /// fixed order.
  std::vector<std::pair<std::string, std::string>> entries;

  bool is_hysteresis() const;
};

RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::string& path);

const std::vector<std::string>& scenario_names();

/// %.17g
std::string format_number(double v);

}  // namespace threshwet
