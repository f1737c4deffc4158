#include <doctest.h>

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "support.hpp"
#include "threshwet/spectral.hpp"

using namespace threshwet;
constexpr double pi = std::numbers::pi;

namespace {

double max_abs_diff(const ScalarField& a, const ScalarField& b) {
  double m = 0.0;
  for (std::size_t n = 0; n < a.values.size(); ++n) m = std::max(m, std::abs(a.values[n] - b.values[n]));
  return m;
}

double mean(const ScalarField& f) {
  double s = 0.0;
  for (double v : f.values) s += v;
  return s / static_cast<double>(f.values.size());
}

// Full complex transform pair with the same multipliers; returns the real part
// and the largest imaginary residue.
std::pair<ScalarField, double> complex_convolve(const ScalarField& f, const KernelSpectrum& ks) {
  const GridSpec& g = f.grid;
  const std::size_t n = g.size();
  std::vector<std::complex<double>> buf(n);
  for (std::size_t k = 0; k < n; ++k) buf[k] = f.values[k];
  auto* data = reinterpret_cast<fftw_complex*>(buf.data());
  fftw_plan fw = fftw_plan_dft_2d(g.ny, g.nx, data, data, FFTW_FORWARD, FFTW_ESTIMATE);
  fftw_plan bw = fftw_plan_dft_2d(g.ny, g.nx, data, data, FFTW_BACKWARD, FFTW_ESTIMATE);
  fftw_execute(fw);
  for (std::size_t k = 0; k < n; ++k) buf[k] *= ks.multipliers()[k] / static_cast<double>(n);
  fftw_execute(bw);
  fftw_destroy_plan(fw);
  fftw_destroy_plan(bw);
  ScalarField out(g);
  double residue = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = buf[k].real();
    residue = std::max(residue, std::abs(buf[k].imag()));
  }
  return {out, residue};
}

}  // namespace

TEST_CASE("kernel multipliers") {
  const GridSpec g = make_grid(64, 32, -pi / 2, -pi / 2, pi, pi);
  const double dt = 0.01;
  const KernelSpectrum ks(g, dt);
  CHECK(ks.multiplier(0, 0) == 1.0);
  CHECK(ks.multiplier(1, 0) == doctest::Approx(std::exp(-4 * dt)).epsilon(1e-15));
  CHECK(ks.multiplier(0, 1) == doctest::Approx(std::exp(-4 * dt)).epsilon(1e-15));
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      const double m = ks.multiplier(i, j);
      CHECK((m > 0.0 && m <= 1.0));
      CHECK(m == ks.multiplier((g.nx - i) % g.nx, (g.ny - j) % g.ny));
    }
  }
  CHECK_THROWS(KernelSpectrum(g, 0.0));
  CHECK_THROWS(KernelSpectrum(g, -1.0));
}

TEST_CASE("convolution identities on 256^2") {
  const GridSpec g = make_grid(256, 256, -pi / 2, -pi / 2, pi, pi);
  const double dt = 0.01;
  const KernelSpectrum ks(g, dt);

  SUBCASE("constant preserved") {
    const ScalarField c(g, 3.25);
    const ScalarField out = convolve(c, ks);
    for (double v : out.values) CHECK(std::abs(v - 3.25) <= 1e-12 * 3.25);
  }
  SUBCASE("cos(2x) eigenfunction") {
    ScalarField f(g);
    for (int j = 0; j < g.ny; ++j) {
      for (int i = 0; i < g.nx; ++i) f(i, j) = std::cos(2 * g.cell_x(i));
    }
    const ScalarField out = convolve(f, ks);
    double err = 0.0;
    for (std::size_t n = 0; n < f.values.size(); ++n) {
      err = std::max(err, std::abs(out.values[n] - std::exp(-4 * dt) * f.values[n]));
    }
    CHECK(err < 1e-12);
  }
  std::mt19937_64 rng(11);
  const IndicatorField ind = testsupport::random_indicator(g, rng, 0.3);
  const ScalarField f = to_scalar(ind);
  SUBCASE("mean preserved") {
    CHECK(std::abs(mean(convolve(f, ks)) - mean(f)) <= 1e-12 * mean(f));
  }
  SUBCASE("maximum principle") {
    for (double v : convolve(f, ks).values) CHECK((v >= -1e-10 && v <= 1.0 + 1e-10));
  }
  SUBCASE("semigroup") {
    const KernelSpectrum a(g, 0.004), b(g, 0.006);
    CHECK(max_abs_diff(convolve(convolve(f, a), b), convolve(f, ks)) < 1e-10);
  }
  SUBCASE("linearity") {
    const ScalarField h = to_scalar(testsupport::random_indicator(g, rng));
    ScalarField mix(g);
    for (std::size_t n = 0; n < mix.values.size(); ++n) mix.values[n] = 2.5 * f.values[n] - 0.75 * h.values[n];
    const ScalarField lhs = convolve(mix, ks);
    const ScalarField cf = convolve(f, ks), ch = convolve(h, ks);
    double err = 0.0;
    for (std::size_t n = 0; n < mix.values.size(); ++n) {
      err = std::max(err, std::abs(lhs.values[n] - (2.5 * cf.values[n] - 0.75 * ch.values[n])));
    }
    CHECK(err < 1e-12);
  }
  SUBCASE("imaginary residue of a full complex transform") {
    auto [re, residue] = complex_convolve(f, ks);
    CHECK(residue < 1e-10);
    CHECK(max_abs_diff(re, convolve(f, ks)) < 1e-12);
  }
  CHECK_THROWS(convolve(f, KernelSpectrum(make_grid(128, 256, -pi / 2, -pi / 2, pi, pi), dt)));
}

TEST_CASE("quadrature oracle agreement on 16^2") {
  const GridSpec g = make_grid(16, 16, 0, 0, 1, 1);
  std::mt19937_64 rng(3);
  const IndicatorField ind = testsupport::random_indicator(g, rng);
  for (double dt : {4 * g.dx() * g.dx(), 0.02, 0.1}) {
    const KernelSpectrum ks(g, dt);
    const ScalarField out = convolve(ind, ks);
    double err = 0.0;
    for (int j = 0; j < g.ny; ++j) {
      for (int i = 0; i < g.nx; ++i) {
        const double q = oracle::quadrature_convolution(testsupport::as_doubles(ind), testsupport::lattice(g), dt,
                                                        g.cell_x(i), g.cell_y(j));
        err = std::max(err, std::abs(q - out(i, j)));
      }
    }
    CHECK(err < 1e-8);
  }
  // Constant field through the oracle.
  const std::vector<double> ones(g.size(), 1.0);
  CHECK(oracle::quadrature_convolution(ones, testsupport::lattice(g), 0.01, 0.3, 0.6) ==
        doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("half-plane strip matches erfc") {
  // Vapor occupies x > 0 on [-2, 2); sample on the liquid side.
  const GridSpec g = make_grid(512, 16, -2, 0, 4, 1);
  const double dt = 0.002;
  IndicatorField strip(g);
  for (int j = 0; j < g.ny; ++j) {
    for (int i = g.nx / 2; i < g.nx; ++i) strip(i, j) = 1;
  }
  const ScalarField out = convolve(strip, KernelSpectrum(g, dt));
  for (int i : {g.nx / 2 - 1, g.nx / 2 - 3, g.nx / 2 - 10, g.nx / 2 - 20}) {
    const double d = -g.cell_x(i);
    const double q = oracle::quadrature_convolution(testsupport::as_doubles(strip), testsupport::lattice(g), dt,
                                                    g.cell_x(i), g.cell_y(3));
    CHECK(std::abs(out(i, 3) - q) < 1e-8);
    // Cell sampling of the strip against the continuum erfc profile.
    CHECK(std::abs(out(i, 3) - oracle::half_plane_smoothing(d, dt)) < 2e-3);
  }
}

TEST_CASE("far-field locality") {
  const GridSpec g = make_grid(256, 64, 0, 0, 4, 1);
  const double dt = 0.001;
  IndicatorField a(g), b(g);
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < 32; ++i) a(i, j) = 1;
    for (int i = 128; i < 160; ++i) b(i, j) = 1;
  }
  const ScalarField ca = convolve(a, KernelSpectrum(g, dt));
  double worst = 0.0;
  for (std::size_t n = 0; n < g.size(); ++n) {
    if (b.values[n]) worst = std::max(worst, std::abs(ca.values[n]));
  }
  CHECK(worst <= 1e-10);
}

TEST_CASE("smoothed occupancy linearity") {
  const GridSpec g = make_grid(32, 32, 0, 0, 1, 1);
  std::mt19937_64 rng(5);
  const PhasePartition p = testsupport::random_partition(g, 6, rng);
  const KernelSpectrum ks(g, 0.003);
  const std::vector<double> w = {1.0, -1.0, -0.5};
  const ScalarField s = smoothed_occupancy(p, w, ks);
  const ScalarField l = convolve(p.liquid, ks), v = convolve(p.vapor, ks), so = convolve(p.solids[0], ks);
  for (std::size_t n = 0; n < g.size(); ++n) {
    CHECK(std::abs(s.values[n] - (l.values[n] - v.values[n] - 0.5 * so.values[n])) < 1e-12);
  }
  const std::vector<double> zero = {0.0, 0.0, 0.0};
  for (double x : smoothed_occupancy(p, zero, ks).values) CHECK(x == 0.0);
  const std::vector<double> only_l = {1.0, 0.0, 0.0};
  CHECK(max_abs_diff(smoothed_occupancy(p, only_l, ks), l) < 1e-14);
  const std::vector<double> wrong = {1.0, 0.0};
  CHECK_THROWS(smoothed_occupancy(p, wrong, ks));
}
