#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "threshwet/config.hpp"
#include "threshwet/experiments.hpp"
#include "threshwet/grid.hpp"
#include "threshwet/solver.hpp"

namespace threshwet {

class OutputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Header `iter,dt,energy,delta,sym_diff,volume`, one row per record.
std::string trace_csv(const std::vector<StepRecord>& records);

/// Header `step,volume,left_x,right_x,left_angle,right_angle,energy`.
std::string hysteresis_csv(const std::vector<HysteresisRecord>& records);

/// Binary P5 graymap, top row first: liquid 0, vapor 128, solid 255.
std::string pgm_bytes(const PhasePartition& p);

/// "state_0007.pgm"
std::string snapshot_name(int index);

/// One `key = value` line per config entry, then the derived values.
std::string meta_text(const RunConfig& config, const std::vector<std::pair<std::string, std::string>>& derived);

/// Throws OutputError naming the path on failure.
void write_file(const std::filesystem::path& path, const std::string& bytes);

}  // namespace threshwet
