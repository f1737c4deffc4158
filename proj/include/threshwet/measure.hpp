#pragma once

#include <optional>
#include <vector>

#include "threshwet/grid.hpp"

namespace threshwet {

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

/// Polyline along the liquid-vapor interface.
struct InterfaceCurve {
  std::vector<Point2> points;
  bool closed = false;

  double length() const;
  /// Shoelace area; only meaningful for closed curves.
  double enclosed_area() const;
};

/// Marching squares on the liquid indicator over the dual grid of cell
/// centres. Crossings sit midway between a liquid centre and a vapor centre;
/// liquid-solid edges are not part of the interface, so curves touching the
/// wall end there (open curves). Saddle squares keep diagonal liquid cells
/// apart. Curves do not wrap across the periodic boundary.
std::vector<InterfaceCurve> extract_interface(const PhasePartition& p);
std::vector<InterfaceCurve> extract_interface(const IndicatorField& liquid,
                                              const IndicatorField* solid = nullptr);

struct Circle {
  double cx = 0.0;
  double cy = 0.0;
  double r = 0.0;
};

/// Geometric least-squares circle: algebraic (Kasa) fit refined by Gauss-Newton
/// on the orthogonal distances. Needs at least three non-collinear points.
Circle fit_circle(const std::vector<Point2>& pts);

struct ContactMeasurement {
  bool attached = false;
  double left_x = 0.0;
  double right_x = 0.0;
  double left_angle = 0.0;   // radians, inside the liquid, against the horizontal
  double right_angle = 0.0;
  Circle fit;
  double reference_y = 0.0;
  double exclusion_height = 0.0;
  std::size_t fit_points = 0;
};

/// Contact points and angles of a drop resting on top of a solid. A circle is
/// fitted to the interface points with y > reference_y + exclusion_height; the
/// contact points are its intersections with y = reference_y and the angle is
/// measured inside the liquid between the circle tangent and the horizontal.
/// If the circle misses the reference line the result has attached = false.
ContactMeasurement fit_contact(const std::vector<InterfaceCurve>& curves, double reference_y,
                               double exclusion_height = 0.0);

struct ErrorNorms {
  double l1 = 0.0;       // symmetric-difference area
  double linf = 0.0;     // Hausdorff distance between interface polylines
  double vol_err = 0.0;  // volume(u) - reference volume
};

/// Reference region with its raster, its exact interface curves and exact area.
struct ReferenceShape {
  IndicatorField raster;
  std::vector<InterfaceCurve> curves;
  double area = 0.0;
};

ErrorNorms error_norms(const IndicatorField& u, const IndicatorField& reference);
ErrorNorms error_norms(const PhasePartition& computed, const ReferenceShape& reference);

/// Symmetric Hausdorff distance between two sets of polylines, measured from
/// vertices to segments in both directions. Throws if either set is empty.
double hausdorff_distance(const std::vector<InterfaceCurve>& a, const std::vector<InterfaceCurve>& b);

/// 4-connected components of an indicator (no periodic wrap), ordered by the
/// lowest linear index they contain.
std::vector<IndicatorField> connected_components(const IndicatorField& u);

/// Smallest distance from a liquid cell centre to a periodic seam, i.e. a
/// domain edge across which the phase labels are discontinuous. Infinite when
/// there is no seam or no liquid.
double seam_distance(const PhasePartition& p);

}  // namespace threshwet
