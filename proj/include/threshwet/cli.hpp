#pragma once

#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "threshwet/config.hpp"

namespace threshwet {

struct RunOutcome {
  std::vector<std::pair<std::string, std::string>> derived;  // also written to meta.txt
  std::vector<std::pair<std::string, std::string>> summary;
  int snapshots = 0;
};

/// Runs the configured scenario and writes trace.csv, hysteresis.csv (sweeps
/// only), state_NNNN.pgm and meta.txt into config.output_dir.
RunOutcome execute(const RunConfig& config, std::ostream& log);

/// Subcommands: run <config>, experiment <name> [overrides], validate <config>.
int run_cli(int argc, char** argv);

}  // namespace threshwet
