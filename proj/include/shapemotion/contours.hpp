#pragma once

#include <vector>

#include "shapemotion/frame.hpp"
#include "shapemotion/geometry.hpp"

namespace shapemotion {

/// Closed boundary of an 8-connected region: consecutive points are
/// 8-adjacent and the last point is adjacent to the first. Ordered clockwise
/// in image coordinates (y grows downward).
struct Contour {
  std::vector<PointI> points;

  BBox bounds() const;
  double perimeter() const;  // closing edge included
};

/// Simplified closed polygon with real-valued vertices.
struct Polygon {
  std::vector<PointD> vertices;
};

struct ContourMetrics {
  double area = 0.0;        // shoelace, absolute value
  double perimeter = 0.0;   // closing edge included
  bool convex = false;
  PointD centroid;          // from polygon moments (m10/m00, m01/m00)
  double circularity = 0.0; // 4 pi A / P^2
  bool degenerate = false;  // zero-area or sub-3-vertex polygon
};

/// Traces the outer border of every 8-connected white region using
/// Moore-neighbor following with the backtrack start rule. Holes are not
/// traced; regions touching the frame border are (out of bounds reads as
/// black). Traces shorter than 4 points (regions of one or two pixels) are
/// discarded.
std::vector<Contour> trace_contours(const BinaryMask& mask);

/// Ramer-Douglas-Peucker on the closed curve: the contour is split at its
/// two farthest-apart points, each arc simplified, and the halves rejoined.
/// Every discarded point lies within epsilon of the simplified boundary.
/// epsilon = 0 keeps every point.
Polygon approx_polygon(const Contour& contour, double epsilon);

ContourMetrics contour_metrics(const Polygon& polygon);

/// Minor/major axis ratio in [0, 1] from the polygon's second-order central
/// moments (1 for a circle or square, b/a for an ellipse with semi-axes a, b).
double axis_ratio(const Polygon& polygon);

}  // namespace shapemotion
