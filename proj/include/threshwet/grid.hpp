#pragma once

#include <cstddef>
#include <cstdint>
#include <numbers>
#include <vector>

namespace threshwet {

/// Uniform rectangular cell-centred grid.
///
/// Cell (i, j) has centre (x0 + (i + 1/2) dx, y0 + (j + 1/2) dy). Every field
/// on the grid is stored row-major with x fastest: value(i, j) = values[j * nx + i].
/// Row j = 0 is the bottom row (smallest y).
struct GridSpec {
  int nx = 0;
  int ny = 0;
  double x0 = 0.0;
  double y0 = 0.0;
  double lx = 1.0;
  double ly = 1.0;

  double dx() const { return lx / nx; }
  double dy() const { return ly / ny; }
  double cell_area() const { return dx() * dy(); }
  double cell_x(int i) const { return x0 + (i + 0.5) * dx(); }
  double cell_y(int j) const { return y0 + (j + 0.5) * dy(); }
  std::size_t size() const { return static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny); }
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(j) * static_cast<std::size_t>(nx) + static_cast<std::size_t>(i);
  }

  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

/// Validating constructor. Requires nx, ny >= 8 and positive extents; any size
/// accepted by the FFT backend (all sizes for FFTW) is allowed, powers of two
/// are fastest.
GridSpec make_grid(int nx, int ny, double x0, double y0, double lx, double ly);

struct ScalarField {
  GridSpec grid;
  std::vector<double> values;

  ScalarField() = default;
  explicit ScalarField(const GridSpec& g, double fill = 0.0) : grid(g), values(g.size(), fill) {}

  double operator()(int i, int j) const { return values[grid.index(i, j)]; }
  double& operator()(int i, int j) { return values[grid.index(i, j)]; }
};

/// Characteristic function of a set of cells; every value is exactly 0 or 1.
struct IndicatorField {
  GridSpec grid;
  std::vector<std::uint8_t> values;

  IndicatorField() = default;
  explicit IndicatorField(const GridSpec& g, std::uint8_t fill = 0) : grid(g), values(g.size(), fill) {}

  std::uint8_t operator()(int i, int j) const { return values[grid.index(i, j)]; }
  std::uint8_t& operator()(int i, int j) { return values[grid.index(i, j)]; }

  std::size_t count() const;

  friend bool operator==(const IndicatorField&, const IndicatorField&) = default;
};

/// Liquid (D1), vapor (D2) and one or more solid materials (D3, D4, ...) that
/// together tile every cell of the extended domain exactly once.
struct PhasePartition {
  IndicatorField liquid;
  IndicatorField vapor;
  std::vector<IndicatorField> solids;

  const GridSpec& grid() const { return liquid.grid; }

  /// Cells not occupied by any solid.
  IndicatorField fluid_mask() const;
  IndicatorField solid_union() const;

  /// Throws std::invalid_argument if the phases do not form an exact partition.
  void validate() const;

  friend bool operator==(const PhasePartition&, const PhasePartition&) = default;
};

/// Builds the partition with the given liquid and solids; vapor fills the rest.
/// Liquid cells that fall on a solid are removed.
PhasePartition make_partition(const IndicatorField& liquid, std::vector<IndicatorField> solids);

struct SolidTension {
  double gamma_sl = 1.0;
  double gamma_sv = 1.0;
};

/// gamma_LV plus (gamma_SL, gamma_SV) per solid material.
struct SurfaceTensionSet {
  double gamma_lv = 1.0;
  std::vector<SolidTension> solids;

  /// Young's relation cos(theta_Y) = (gamma_SV - gamma_SL) / gamma_LV.
  double cos_theta(std::size_t material) const;
  double theta(std::size_t material) const;

  /// Requires gamma_lv > 0 and |cos theta_Y| < 1 for every material.
  void validate() const;

  /// gamma_LV = 1, gamma_SL = 1, gamma_SV = 1 + cos(theta) per material.
  static SurfaceTensionSet from_young_angles(const std::vector<double>& thetas);
};

double volume(const IndicatorField& u);
double symmetric_difference_area(const IndicatorField& u, const IndicatorField& v);
std::size_t symmetric_difference_count(const IndicatorField& u, const IndicatorField& v);

// Constructors. A cell belongs to a region iff its centre lies strictly inside;
// a centre exactly on the boundary counts as outside.

IndicatorField disk_indicator(const GridSpec& grid, double cx, double cy, double r);

/// Disk restricted to centres with y > cutoff_y.
IndicatorField half_disk_indicator(const GridSpec& grid, double cx, double cy, double r, double cutoff_y);

/// Solid below a horizontal line: cells with centre y < top_y.
IndicatorField flat_solid(const GridSpec& grid, double top_y);

/// Height of the sawtooth wall y = baseline + tan(alpha) * pi/(4k+2) * |s((2k+1)x - pi)|,
/// where s is the period-2pi triangle wave with s(-pi) = -1, s(0) = 1, s(pi) = -1.
double sawtooth_height(double x, double baseline_y, int k, double alpha);
double sawtooth_tooth_height(int k, double alpha);

/// Solid below the sawtooth wall.
IndicatorField sawtooth_solid(const GridSpec& grid, double baseline_y, int k, double alpha);

struct PatternedSolid {
  IndicatorField material_a;  // D3
  IndicatorField material_b;  // D4
};

/// Chemically patterned flat solid. An interval of length `interval` centred
/// on the grid is split into 2k+1 equal periods of width w; within each period
/// material B occupies the centred half |x - c| < w/4 and material A the two
/// outer quarters, so the central stripe is B. The pattern repeats with
/// period w outside the interval; it is continuous across the periodic wrap
/// when lx / w is an odd integer.
PatternedSolid patterned_solid(const GridSpec& grid, double top_y, int k, double interval = std::numbers::pi);

/// A/B stripe boundaries of patterned_solid inside the grid, ascending, with
/// the grid's x-ends prepended and appended.
std::vector<double> pattern_stripe_edges(const GridSpec& grid, int k, double interval = std::numbers::pi);

}  // namespace threshwet
