#include "threshwet/measure.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <unordered_map>

namespace threshwet {

double InterfaceCurve::length() const {
  double len = 0.0;
  for (std::size_t k = 1; k < points.size(); ++k) {
    len += std::hypot(points[k].x - points[k - 1].x, points[k].y - points[k - 1].y);
  }
  if (closed && points.size() > 2) {
    len += std::hypot(points.front().x - points.back().x, points.front().y - points.back().y);
  }
  return len;
}

double InterfaceCurve::enclosed_area() const {
  if (points.size() < 3) return 0.0;
  double a = 0.0;
  for (std::size_t k = 0; k < points.size(); ++k) {
    const Point2& p = points[k];
    const Point2& q = points[(k + 1) % points.size()];
    a += p.x * q.y - q.x * p.y;
  }
  return 0.5 * std::abs(a);
}

namespace {

enum class Label : std::uint8_t { liquid, vapor, solid };

// A crossing lives on the dual edge joining two neighbouring cell centres.
// Horizontal edge (i,j)-(i+1,j) has id j*nx+i; vertical (i,j)-(i,j+1) has
// id nx*ny + j*nx + i.
struct Segment {
  std::size_t a;
  std::size_t b;
};

}  // namespace

std::vector<InterfaceCurve> extract_interface(const IndicatorField& liquid, const IndicatorField* solid) {
  const GridSpec& g = liquid.grid;
  if (solid != nullptr && solid->grid != g) throw std::invalid_argument("extract_interface: grid mismatch");
  const int nx = g.nx;
  const int ny = g.ny;
  const std::size_t n_cells = g.size();
  auto label = [&](int i, int j) {
    const std::size_t n = g.index(i, j);
    if (liquid.values[n]) return Label::liquid;
    if (solid != nullptr && solid->values[n]) return Label::solid;
    return Label::vapor;
  };
  auto h_edge = [&](int i, int j) { return static_cast<std::size_t>(j) * nx + i; };
  auto v_edge = [&](int i, int j) { return n_cells + static_cast<std::size_t>(j) * nx + i; };
  auto edge_point = [&](std::size_t id) {
    if (id < n_cells) {
      const int j = static_cast<int>(id / nx);
      const int i = static_cast<int>(id % nx);
      return Point2{g.x0 + (i + 1.0) * g.dx(), g.cell_y(j)};
    }
    const std::size_t k = id - n_cells;
    const int j = static_cast<int>(k / nx);
    const int i = static_cast<int>(k % nx);
    return Point2{g.cell_x(i), g.y0 + (j + 1.0) * g.dy()};
  };

  std::vector<Segment> segments;
  for (int j = 0; j + 1 < ny; ++j) {
    for (int i = 0; i + 1 < nx; ++i) {
      // Corners counter-clockwise: 0=(i,j) 1=(i+1,j) 2=(i+1,j+1) 3=(i,j+1).
      const std::array<Label, 4> c{label(i, j), label(i + 1, j), label(i + 1, j + 1), label(i, j + 1)};
      const std::array<std::size_t, 4> e{h_edge(i, j), v_edge(i + 1, j), h_edge(i, j + 1), v_edge(i, j)};
      // Edge k joins corners k and (k+1)%4.
      std::array<bool, 4> crosses{};
      std::array<bool, 4> lv{};
      int n_cross = 0;
      for (int k = 0; k < 4; ++k) {
        const bool in_a = c[k] == Label::liquid;
        const bool in_b = c[(k + 1) % 4] == Label::liquid;
        crosses[k] = in_a != in_b;
        lv[k] = crosses[k] && (c[k] == Label::vapor || c[(k + 1) % 4] == Label::vapor);
        n_cross += crosses[k];
      }
      auto emit = [&](int ka, int kb) {
        if (lv[ka] && lv[kb]) segments.push_back({e[ka], e[kb]});
      };
      if (n_cross == 2) {
        int ka = -1, kb = -1;
        for (int k = 0; k < 4; ++k) {
          if (!crosses[k]) continue;
          (ka < 0 ? ka : kb) = k;
        }
        emit(ka, kb);
      } else if (n_cross == 4) {
        // Saddle: cut off each liquid corner separately. Corner k touches
        // edges k-1 and k.
        for (int k = 0; k < 4; ++k) {
          if (c[k] == Label::liquid) emit((k + 3) % 4, k);
        }
      }
    }
  }

  std::unordered_map<std::size_t, std::vector<std::size_t>> incident;
  incident.reserve(segments.size() * 2);
  for (std::size_t s = 0; s < segments.size(); ++s) {
    incident[segments[s].a].push_back(s);
    incident[segments[s].b].push_back(s);
  }
  std::vector<bool> used(segments.size(), false);
  std::vector<InterfaceCurve> curves;

  auto walk = [&](std::size_t start_edge, std::size_t first_seg) {
    InterfaceCurve curve;
    std::size_t edge = start_edge;
    std::size_t seg = first_seg;
    curve.points.push_back(edge_point(edge));
    while (true) {
      used[seg] = true;
      const std::size_t next = segments[seg].a == edge ? segments[seg].b : segments[seg].a;
      edge = next;
      if (edge == start_edge) {
        curve.closed = true;
        break;
      }
      curve.points.push_back(edge_point(edge));
      std::size_t cont = segments.size();
      for (std::size_t s : incident[edge]) {
        if (!used[s]) {
          cont = s;
          break;
        }
      }
      if (cont == segments.size()) break;
      seg = cont;
    }
    return curve;
  };

  // Open curves first, starting from dangling ends in ascending edge order.
  std::vector<std::size_t> ends;
  for (const auto& [edge, segs] : incident) {
    if (segs.size() == 1) ends.push_back(edge);
  }
  std::sort(ends.begin(), ends.end());
  for (std::size_t edge : ends) {
    const std::size_t s = incident[edge].front();
    if (!used[s]) curves.push_back(walk(edge, s));
  }
  for (std::size_t s = 0; s < segments.size(); ++s) {
    if (!used[s]) curves.push_back(walk(std::min(segments[s].a, segments[s].b), s));
  }
  return curves;
}

std::vector<InterfaceCurve> extract_interface(const PhasePartition& p) {
  const IndicatorField solid = p.solid_union();
  return extract_interface(p.liquid, &solid);
}

Circle fit_circle(const std::vector<Point2>& pts) {
  if (pts.size() < 3) throw std::invalid_argument("fit_circle: need at least three points");
  const Eigen::Index n = static_cast<Eigen::Index>(pts.size());
  // Centre the data for conditioning.
  double mx = 0.0, my = 0.0;
  for (const auto& p : pts) {
    mx += p.x;
    my += p.y;
  }
  mx /= n;
  my /= n;
  Eigen::MatrixXd A(n, 3);
  Eigen::VectorXd b(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const double x = pts[k].x - mx;
    const double y = pts[k].y - my;
    A(k, 0) = x;
    A(k, 1) = y;
    A(k, 2) = 1.0;
    b(k) = -(x * x + y * y);
  }
  const Eigen::Vector3d s = A.colPivHouseholderQr().solve(b);
  double cx = -0.5 * s(0);
  double cy = -0.5 * s(1);
  const double r2 = cx * cx + cy * cy - s(2);
  if (!(r2 > 0.0) || !std::isfinite(r2)) throw std::runtime_error("fit_circle: degenerate point set");
  double r = std::sqrt(r2);

  for (int it = 0; it < 50; ++it) {
    Eigen::MatrixXd J(n, 3);
    Eigen::VectorXd res(n);
    for (Eigen::Index k = 0; k < n; ++k) {
      const double dx = pts[k].x - mx - cx;
      const double dy = pts[k].y - my - cy;
      const double d = std::max(std::hypot(dx, dy), 1e-300);
      res(k) = d - r;
      J(k, 0) = -dx / d;
      J(k, 1) = -dy / d;
      J(k, 2) = -1.0;
    }
    const Eigen::Vector3d step = J.colPivHouseholderQr().solve(-res);
    cx += step(0);
    cy += step(1);
    r += step(2);
    if (step.norm() < 1e-14 * std::max(1.0, r)) break;
  }
  return {cx + mx, cy + my, std::abs(r)};
}

ContactMeasurement fit_contact(const std::vector<InterfaceCurve>& curves, double reference_y,
                               double exclusion_height) {
  ContactMeasurement m;
  m.reference_y = reference_y;
  m.exclusion_height = exclusion_height;
  std::vector<Point2> pts;
  for (const auto& c : curves) {
    for (const auto& p : c.points) {
      if (p.y > reference_y + exclusion_height) pts.push_back(p);
    }
  }
  m.fit_points = pts.size();
  if (pts.size() < 3) return m;
  m.fit = fit_circle(pts);
  const double dy = reference_y - m.fit.cy;
  if (std::abs(dy) >= m.fit.r) return m;
  const double half = std::sqrt(m.fit.r * m.fit.r - dy * dy);
  m.attached = true;
  m.left_x = m.fit.cx - half;
  m.right_x = m.fit.cx + half;
  // Liquid is the part of the disk above the line: cos(theta) = (y_ref - cy) / r.
  const double theta = std::acos(std::clamp(dy / m.fit.r, -1.0, 1.0));
  m.left_angle = theta;
  m.right_angle = theta;
  return m;
}

namespace {

double point_segment_distance(const Point2& p, const Point2& a, const Point2& b) {
  const double vx = b.x - a.x;
  const double vy = b.y - a.y;
  const double len2 = vx * vx + vy * vy;
  double t = 0.0;
  if (len2 > 0.0) t = std::clamp(((p.x - a.x) * vx + (p.y - a.y) * vy) / len2, 0.0, 1.0);
  return std::hypot(p.x - (a.x + t * vx), p.y - (a.y + t * vy));
}

double directed_hausdorff(const std::vector<InterfaceCurve>& from, const std::vector<InterfaceCurve>& to) {
  double worst = 0.0;
  for (const auto& cf : from) {
    for (const auto& p : cf.points) {
      double best = std::numeric_limits<double>::infinity();
      for (const auto& ct : to) {
        const auto& q = ct.points;
        if (q.size() == 1) best = std::min(best, std::hypot(p.x - q[0].x, p.y - q[0].y));
        for (std::size_t k = 1; k < q.size(); ++k) best = std::min(best, point_segment_distance(p, q[k - 1], q[k]));
        if (ct.closed && q.size() > 2) best = std::min(best, point_segment_distance(p, q.back(), q.front()));
      }
      worst = std::max(worst, best);
    }
  }
  return worst;
}

bool has_points(const std::vector<InterfaceCurve>& c) {
  return std::any_of(c.begin(), c.end(), [](const InterfaceCurve& k) { return !k.points.empty(); });
}

}  // namespace

double hausdorff_distance(const std::vector<InterfaceCurve>& a, const std::vector<InterfaceCurve>& b) {
  if (!has_points(a) || !has_points(b)) throw std::invalid_argument("hausdorff_distance: empty interface");
  return std::max(directed_hausdorff(a, b), directed_hausdorff(b, a));
}

ErrorNorms error_norms(const IndicatorField& u, const IndicatorField& reference) {
  ErrorNorms e;
  e.l1 = symmetric_difference_area(u, reference);
  e.vol_err = volume(u) - volume(reference);
  e.linf = hausdorff_distance(extract_interface(u), extract_interface(reference));
  return e;
}

ErrorNorms error_norms(const PhasePartition& computed, const ReferenceShape& reference) {
  ErrorNorms e;
  e.l1 = symmetric_difference_area(computed.liquid, reference.raster);
  e.vol_err = volume(computed.liquid) - reference.area;
  e.linf = hausdorff_distance(extract_interface(computed), reference.curves);
  return e;
}

std::vector<IndicatorField> connected_components(const IndicatorField& u) {
  const GridSpec& g = u.grid;
  std::vector<int> comp(g.size(), -1);
  std::vector<IndicatorField> out;
  std::vector<std::size_t> stack;
  for (std::size_t seed = 0; seed < g.size(); ++seed) {
    if (!u.values[seed] || comp[seed] >= 0) continue;
    const int id = static_cast<int>(out.size());
    out.emplace_back(g);
    comp[seed] = id;
    stack.push_back(seed);
    while (!stack.empty()) {
      const std::size_t n = stack.back();
      stack.pop_back();
      out.back().values[n] = 1;
      const int i = static_cast<int>(n % g.nx);
      const int j = static_cast<int>(n / g.nx);
      const std::array<std::array<int, 2>, 4> nbr{{{i - 1, j}, {i + 1, j}, {i, j - 1}, {i, j + 1}}};
      for (const auto& [a, b] : nbr) {
        if (a < 0 || b < 0 || a >= g.nx || b >= g.ny) continue;
        const std::size_t m = g.index(a, b);
        if (u.values[m] && comp[m] < 0) {
          comp[m] = id;
          stack.push_back(m);
        }
      }
    }
  }
  return out;
}

double seam_distance(const PhasePartition& p) {
  const GridSpec& g = p.grid();
  auto label = [&](int i, int j) -> int {
    const std::size_t n = g.index(i, j);
    if (p.liquid.values[n]) return 0;
    if (p.vapor.values[n]) return 1;
    for (std::size_t m = 0; m < p.solids.size(); ++m) {
      if (p.solids[m].values[n]) return 2 + static_cast<int>(m);
    }
    return -1;
  };
  std::vector<double> x_seam_rows;  // y of rows discontinuous across x = x0
  std::vector<double> y_seam_cols;  // x of columns discontinuous across y = y0
  for (int j = 0; j < g.ny; ++j) {
    if (label(0, j) != label(g.nx - 1, j)) x_seam_rows.push_back(g.y0 + (j + 0.5) * g.dy());
  }
  for (int i = 0; i < g.nx; ++i) {
    if (label(i, 0) != label(i, g.ny - 1)) y_seam_cols.push_back(g.x0 + (i + 0.5) * g.dx());
  }
  double best = std::numeric_limits<double>::infinity();
  if (x_seam_rows.empty() && y_seam_cols.empty()) return best;
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      if (!p.liquid(i, j)) continue;
      const double x = g.cell_x(i);
      const double y = g.cell_y(j);
      const double to_x_seam = std::min(x - g.x0, g.x0 + g.lx - x);
      const double to_y_seam = std::min(y - g.y0, g.y0 + g.ly - y);
      if (to_x_seam < best) {
        for (double ys : x_seam_rows) best = std::min(best, std::hypot(to_x_seam, y - ys));
      }
      if (to_y_seam < best) {
        for (double xs : y_seam_cols) best = std::min(best, std::hypot(x - xs, to_y_seam));
      }
    }
  }
  return best;
}

}  // namespace threshwet
