#include "threshwet/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace threshwet {

GridSpec make_grid(int nx, int ny, double x0, double y0, double lx, double ly) {
  if (nx < 8 || ny < 8) {
    throw std::invalid_argument("make_grid: nx and ny must be >= 8, got " + std::to_string(nx) + "x" +
                                std::to_string(ny));
  }
  if (!(lx > 0.0) || !(ly > 0.0) || !std::isfinite(lx) || !std::isfinite(ly)) {
    throw std::invalid_argument("make_grid: extents must be positive and finite");
  }
  if (!std::isfinite(x0) || !std::isfinite(y0)) {
    throw std::invalid_argument("make_grid: origin must be finite");
  }
  return GridSpec{nx, ny, x0, y0, lx, ly};
}

std::size_t IndicatorField::count() const {
  return static_cast<std::size_t>(std::count(values.begin(), values.end(), std::uint8_t{1}));
}

IndicatorField PhasePartition::solid_union() const {
  IndicatorField out(grid());
  for (const auto& s : solids) {
    for (std::size_t n = 0; n < out.values.size(); ++n) out.values[n] |= s.values[n];
  }
  return out;
}

IndicatorField PhasePartition::fluid_mask() const {
  IndicatorField out = solid_union();
  for (auto& v : out.values) v = static_cast<std::uint8_t>(1 - v);
  return out;
}

void PhasePartition::validate() const {
  const GridSpec& g = grid();
  if (vapor.grid != g) throw std::invalid_argument("PhasePartition: vapor grid mismatch");
  if (liquid.values.size() != g.size() || vapor.values.size() != g.size()) {
    throw std::invalid_argument("PhasePartition: field size mismatch");
  }
  for (const auto& s : solids) {
    if (s.grid != g || s.values.size() != g.size()) {
      throw std::invalid_argument("PhasePartition: solid grid mismatch");
    }
  }
  for (std::size_t n = 0; n < g.size(); ++n) {
    int sum = liquid.values[n] + vapor.values[n];
    if (liquid.values[n] > 1 || vapor.values[n] > 1) {
      throw std::invalid_argument("PhasePartition: indicator value outside {0,1}");
    }
    for (const auto& s : solids) {
      if (s.values[n] > 1) throw std::invalid_argument("PhasePartition: indicator value outside {0,1}");
      sum += s.values[n];
    }
    if (sum != 1) {
      throw std::invalid_argument("PhasePartition: phases do not partition cell " + std::to_string(n));
    }
  }
}

PhasePartition make_partition(const IndicatorField& liquid, std::vector<IndicatorField> solids) {
  PhasePartition p;
  p.liquid = liquid;
  p.solids = std::move(solids);
  const IndicatorField fluid = p.fluid_mask();
  p.vapor = IndicatorField(liquid.grid);
  for (std::size_t n = 0; n < fluid.values.size(); ++n) {
    p.liquid.values[n] = static_cast<std::uint8_t>(p.liquid.values[n] & fluid.values[n]);
    p.vapor.values[n] = static_cast<std::uint8_t>(fluid.values[n] & (1 - p.liquid.values[n]));
  }
  p.validate();
  return p;
}

double SurfaceTensionSet::cos_theta(std::size_t material) const {
  const auto& s = solids.at(material);
  return (s.gamma_sv - s.gamma_sl) / gamma_lv;
}

double SurfaceTensionSet::theta(std::size_t material) const { return std::acos(cos_theta(material)); }

void SurfaceTensionSet::validate() const {
  if (!(gamma_lv > 0.0) || !std::isfinite(gamma_lv)) {
    throw std::invalid_argument("SurfaceTensionSet: gamma_lv must be positive");
  }
  for (std::size_t m = 0; m < solids.size(); ++m) {
    const double c = cos_theta(m);
    if (!std::isfinite(c) || !(c > -1.0 && c < 1.0)) {
      throw std::invalid_argument("SurfaceTensionSet: material " + std::to_string(m) +
                                  " violates -1 < (gamma_sv - gamma_sl)/gamma_lv < 1");
    }
  }
}

SurfaceTensionSet SurfaceTensionSet::from_young_angles(const std::vector<double>& thetas) {
  SurfaceTensionSet t;
  t.gamma_lv = 1.0;
  for (double th : thetas) {
    if (!(th > 0.0 && th < std::numbers::pi)) {
      throw std::invalid_argument("SurfaceTensionSet: Young's angle must lie in (0, pi)");
    }
    t.solids.push_back({1.0, 1.0 + std::cos(th)});
  }
  t.validate();
  return t;
}

double volume(const IndicatorField& u) { return static_cast<double>(u.count()) * u.grid.cell_area(); }

std::size_t symmetric_difference_count(const IndicatorField& u, const IndicatorField& v) {
  if (u.grid != v.grid || u.values.size() != v.values.size()) {
    throw std::invalid_argument("symmetric_difference: grid mismatch");
  }
  std::size_t n = 0;
  for (std::size_t k = 0; k < u.values.size(); ++k) n += (u.values[k] != v.values[k]);
  return n;
}

double symmetric_difference_area(const IndicatorField& u, const IndicatorField& v) {
  return static_cast<double>(symmetric_difference_count(u, v)) * u.grid.cell_area();
}

namespace {

template <typename Pred>
IndicatorField rasterize(const GridSpec& grid, Pred inside) {
  IndicatorField out(grid);
  for (int j = 0; j < grid.ny; ++j) {
    const double y = grid.cell_y(j);
    for (int i = 0; i < grid.nx; ++i) {
      out(i, j) = inside(grid.cell_x(i), y) ? 1 : 0;
    }
  }
  return out;
}

}  // namespace

IndicatorField disk_indicator(const GridSpec& grid, double cx, double cy, double r) {
  if (!(r > 0.0)) throw std::invalid_argument("disk_indicator: radius must be positive");
  const double r2 = r * r;
  return rasterize(grid, [&](double x, double y) {
    const double ddx = x - cx;
    const double ddy = y - cy;
    return ddx * ddx + ddy * ddy < r2;
  });
}

IndicatorField half_disk_indicator(const GridSpec& grid, double cx, double cy, double r, double cutoff_y) {
  if (!(r > 0.0)) throw std::invalid_argument("half_disk_indicator: radius must be positive");
  const double r2 = r * r;
  return rasterize(grid, [&](double x, double y) {
    const double ddx = x - cx;
    const double ddy = y - cy;
    return y > cutoff_y && ddx * ddx + ddy * ddy < r2;
  });
}

IndicatorField flat_solid(const GridSpec& grid, double top_y) {
  if (!(top_y > grid.y0 && top_y < grid.y0 + grid.ly)) {
    throw std::invalid_argument("flat_solid: top_y must lie strictly inside the grid");
  }
  return rasterize(grid, [&](double, double y) { return y < top_y; });
}

double sawtooth_tooth_height(int k, double alpha) {
  return std::tan(alpha) * std::numbers::pi / (4.0 * k + 2.0);
}

double sawtooth_height(double x, double baseline_y, int k, double alpha) {
  constexpr double pi = std::numbers::pi;
  // Reduce the argument to [-pi, pi].
  double arg = (2.0 * k + 1.0) * x - pi;
  arg = std::remainder(arg, 2.0 * pi);
  const double s = arg <= 0.0 ? (2.0 / pi) * (arg + pi) - 1.0 : -(2.0 / pi) * arg + 1.0;
  return baseline_y + sawtooth_tooth_height(k, alpha) * std::abs(s);
}

IndicatorField sawtooth_solid(const GridSpec& grid, double baseline_y, int k, double alpha) {
  if (k < 1) throw std::invalid_argument("sawtooth_solid: k must be >= 1");
  if (!(alpha > 0.0 && alpha < std::numbers::pi / 2)) {
    throw std::invalid_argument("sawtooth_solid: alpha must lie in (0, pi/2)");
  }
  const double top = baseline_y + sawtooth_tooth_height(k, alpha);
  if (!(baseline_y > grid.y0 && top < grid.y0 + grid.ly)) {
    throw std::invalid_argument("sawtooth_solid: wall must lie strictly inside the grid");
  }
  return rasterize(grid, [&](double x, double y) { return y < sawtooth_height(x, baseline_y, k, alpha); });
}

PatternedSolid patterned_solid(const GridSpec& grid, double top_y, int k, double interval) {
  if (k < 1) throw std::invalid_argument("patterned_solid: k must be >= 1");
  if (!(interval > 0.0)) throw std::invalid_argument("patterned_solid: interval must be positive");
  const IndicatorField solid = flat_solid(grid, top_y);
  const double w = interval / (2.0 * k + 1.0);
  const double mid = grid.x0 + 0.5 * grid.lx;
  PatternedSolid out{IndicatorField(grid), IndicatorField(grid)};
  for (int i = 0; i < grid.nx; ++i) {
    const double u = grid.cell_x(i) - mid;
    const bool is_b = std::abs(u - w * std::round(u / w)) < 0.25 * w;
    for (int j = 0; j < grid.ny; ++j) {
      if (!solid(i, j)) continue;
      (is_b ? out.material_b : out.material_a)(i, j) = 1;
    }
  }
  return out;
}

std::vector<double> pattern_stripe_edges(const GridSpec& grid, int k, double interval) {
  const double w = interval / (2.0 * k + 1.0);
  const double mid = grid.x0 + 0.5 * grid.lx;
  const double hi = grid.x0 + grid.lx;
  std::vector<double> edges{grid.x0};
  const int m_max = static_cast<int>(std::ceil(0.5 * grid.lx / w)) + 1;
  for (int m = -m_max; m <= m_max; ++m) {
    for (double e : {mid + m * w - 0.25 * w, mid + m * w + 0.25 * w}) {
      if (e > grid.x0 && e < hi) edges.push_back(e);
    }
  }
  edges.push_back(hi);
  return edges;
}

}  // namespace threshwet
