#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

// Reference computations for the test suite. Nothing here calls into the
// solver library; inputs are plain arrays in row-major order (index j*nx + i).
namespace oracle {

struct Lattice {
  int nx = 0;
  int ny = 0;
  double x0 = 0.0;
  double y0 = 0.0;
  double lx = 1.0;
  double ly = 1.0;

  double dx() const { return lx / nx; }
  double dy() const { return ly / ny; }
  double cx(int i) const { return x0 + (i + 0.5) * dx(); }
  double cy(int j) const { return y0 + (j + 0.5) * dy(); }
};

struct BruteForceResult {
  std::vector<std::size_t> best_subset;  // cell indices, ascending
  double best_value = 0.0;
  std::uint64_t enumeration_count = 0;
};

/// Minimum of sum_{c in S} score[c] over all M-subsets S of the fluid cells,
/// by enumerating every subset. Throws std::invalid_argument above 25 fluid
/// cells. The first minimizer in lexicographic order wins.
BruteForceResult exhaustive_linear_min(const std::vector<double>& score, const std::vector<std::uint8_t>& fluid_mask,
                                       std::size_t M);

/// sum over source cells and periodic images of G_dt(p - y) f(y) dx dy with
/// G_dt(z) = exp(-|z|^2 / (4 dt)) / (4 pi dt); images are kept while the
/// offset is within 10 sqrt(dt) of the domain.
double quadrature_convolution(const std::vector<double>& field, const Lattice& lat, double dt, double px, double py);

/// Bisection for a threshold delta whose strict sublevel set {score < delta}
/// over the fluid cells has as close to M cells as achievable.
double bisection_delta(const std::vector<double>& score, const std::vector<std::uint8_t>& fluid_mask, std::size_t M);

/// Fluid cells with score < delta.
std::vector<std::uint8_t> sublevel_set(const std::vector<double>& score, const std::vector<std::uint8_t>& fluid_mask,
                                       double delta);

/// G_dt * chi_{x > 0} at signed distance d on the vapor side: erfc(d / (2 sqrt(dt))) / 2.
double half_plane_smoothing(double d, double dt);

/// (1/sqrt(dt)) * integral over s > 0 of erfc(s / (2 sqrt(dt))) / 2, by
/// composite Simpson quadrature. Energy per unit length of a flat interface;
/// the closed form is 1/sqrt(pi).
double flat_interface_energy_per_length(double dt);

}  // namespace oracle
