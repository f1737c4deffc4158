#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "threshwet/grid.hpp"

namespace testsupport {

inline oracle::Lattice lattice(const threshwet::GridSpec& g) { return {g.nx, g.ny, g.x0, g.y0, g.lx, g.ly}; }

inline std::vector<double> as_doubles(const threshwet::IndicatorField& f) {
  return std::vector<double>(f.values.begin(), f.values.end());
}

inline std::vector<std::uint8_t> as_bytes(const threshwet::IndicatorField& f) { return f.values; }

inline threshwet::IndicatorField random_indicator(const threshwet::GridSpec& g, std::mt19937_64& rng, double p = 0.5) {
  std::bernoulli_distribution d(p);
  threshwet::IndicatorField f(g);
  for (auto& v : f.values) v = d(rng) ? 1 : 0;
  return f;
}

/// Random liquid/vapor split above a flat solid of `solid_rows` rows.
inline threshwet::PhasePartition random_partition(const threshwet::GridSpec& g, int solid_rows, std::mt19937_64& rng) {
  threshwet::IndicatorField solid(g);
  for (int j = 0; j < solid_rows; ++j) {
    for (int i = 0; i < g.nx; ++i) solid(i, j) = 1;
  }
  threshwet::IndicatorField liquid = random_indicator(g, rng);
  for (std::size_t n = 0; n < liquid.values.size(); ++n) {
    if (solid.values[n]) liquid.values[n] = 0;
  }
  return threshwet::make_partition(liquid, {solid});
}

}  // namespace testsupport
