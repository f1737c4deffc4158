#include "oracles.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace oracle {

BruteForceResult exhaustive_linear_min(const std::vector<double>& score, const std::vector<std::uint8_t>& fluid_mask,
                                       std::size_t M) {
  std::vector<std::size_t> fluid;
  for (std::size_t n = 0; n < fluid_mask.size(); ++n) {
    if (fluid_mask[n]) fluid.push_back(n);
  }
  if (fluid.size() > 25) throw std::invalid_argument("exhaustive_linear_min: more than 25 fluid cells");
  if (M > fluid.size()) throw std::invalid_argument("exhaustive_linear_min: M exceeds the fluid cell count");

  BruteForceResult best;
  best.best_value = std::numeric_limits<double>::infinity();
  const std::size_t n = fluid.size();
  if (M == 0) {
    best.best_value = 0.0;
    best.enumeration_count = 1;
    return best;
  }
  // Combinations as index vectors in lexicographic order.
  std::vector<std::size_t> pick(M);
  for (std::size_t k = 0; k < M; ++k) pick[k] = k;
  while (true) {
    ++best.enumeration_count;
    double v = 0.0;
    for (std::size_t k : pick) v += score[fluid[k]];
    if (v < best.best_value) {
      best.best_value = v;
      best.best_subset.clear();
      for (std::size_t k : pick) best.best_subset.push_back(fluid[k]);
    }
    std::size_t k = M;
    while (k > 0 && pick[k - 1] == n - M + (k - 1)) --k;
    if (k == 0) break;
    ++pick[k - 1];
    for (std::size_t m = k; m < M; ++m) pick[m] = pick[m - 1] + 1;
  }
  return best;
}

double quadrature_convolution(const std::vector<double>& field, const Lattice& lat, double dt, double px, double py) {
  const double reach = 10.0 * std::sqrt(dt);
  const int ax = static_cast<int>(std::ceil(reach / lat.lx)) + 1;
  const int ay = static_cast<int>(std::ceil(reach / lat.ly)) + 1;
  const double norm = lat.dx() * lat.dy() / (4.0 * std::numbers::pi * dt);
  double sum = 0.0;
  for (int j = 0; j < lat.ny; ++j) {
    for (int i = 0; i < lat.nx; ++i) {
      const double f = field[static_cast<std::size_t>(j) * lat.nx + i];
      if (f == 0.0) continue;
      for (int b = -ay; b <= ay; ++b) {
        const double zy = py - lat.cy(j) - b * lat.ly;
        for (int a = -ax; a <= ax; ++a) {
          const double zx = px - lat.cx(i) - a * lat.lx;
          sum += f * norm * std::exp(-(zx * zx + zy * zy) / (4.0 * dt));
        }
      }
    }
  }
  return sum;
}

std::vector<std::uint8_t> sublevel_set(const std::vector<double>& score, const std::vector<std::uint8_t>& fluid_mask,
                                       double delta) {
  std::vector<std::uint8_t> out(score.size(), 0);
  for (std::size_t n = 0; n < score.size(); ++n) out[n] = fluid_mask[n] && score[n] < delta ? 1 : 0;
  return out;
}

double bisection_delta(const std::vector<double>& score, const std::vector<std::uint8_t>& fluid_mask, std::size_t M) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (std::size_t n = 0; n < score.size(); ++n) {
    if (!fluid_mask[n]) continue;
    lo = std::min(lo, score[n]);
    hi = std::max(hi, score[n]);
  }
  if (!(lo <= hi)) return 0.0;
  lo -= 1.0;
  hi += 1.0;
  auto count = [&](double d) {
    std::size_t c = 0;
    for (std::size_t n = 0; n < score.size(); ++n) c += fluid_mask[n] && score[n] < d;
    return c;
  };
  double best = lo;
  std::size_t best_gap = M;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const std::size_t c = count(mid);
    const std::size_t gap = c > M ? c - M : M - c;
    if (gap < best_gap) {
      best_gap = gap;
      best = mid;
    }
    if (c == M) return mid;
    if (c < M) lo = mid;
    else hi = mid;
  }
  return best;
}

double half_plane_smoothing(double d, double dt) { return 0.5 * std::erfc(d / (2.0 * std::sqrt(dt))); }

double flat_interface_energy_per_length(double dt) {
  const double s = std::sqrt(dt);
  const double upper = 40.0 * s;
  const int n = 20000;
  const double h = upper / n;
  auto f = [&](double x) { return 0.5 * std::erfc(x / (2.0 * s)); };
  double sum = f(0.0) + f(upper);
  for (int k = 1; k < n; ++k) sum += (k % 2 ? 4.0 : 2.0) * f(k * h);
  return sum * h / 3.0 / s;
}

}  // namespace oracle
