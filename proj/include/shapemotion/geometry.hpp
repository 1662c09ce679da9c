#pragma once

#include <cmath>

namespace shapemotion {

struct PointI {
  int x = 0;
  int y = 0;
  bool operator==(const PointI&) const = default;
};

struct PointD {
  double x = 0.0;
  double y = 0.0;
};

inline double distance(const PointD& a, const PointD& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

/// Axis-aligned pixel rectangle, inclusive on all four edges.
struct BBox {
  int x0 = 0, y0 = 0;
  int x1 = -1, y1 = -1;

  bool empty() const { return x1 < x0 || y1 < y0; }
  long long area() const {
    return empty() ? 0 : static_cast<long long>(x1 - x0 + 1) * (y1 - y0 + 1);
  }
  bool operator==(const BBox&) const = default;
};

inline double iou(const BBox& a, const BBox& b) {
  if (a.empty() || b.empty()) return 0.0;
  const int ix0 = a.x0 > b.x0 ? a.x0 : b.x0;
  const int iy0 = a.y0 > b.y0 ? a.y0 : b.y0;
  const int ix1 = a.x1 < b.x1 ? a.x1 : b.x1;
  const int iy1 = a.y1 < b.y1 ? a.y1 : b.y1;
  if (ix1 < ix0 || iy1 < iy0) return 0.0;
  const double inter = static_cast<double>(ix1 - ix0 + 1) * (iy1 - iy0 + 1);
  const double uni = static_cast<double>(a.area()) + static_cast<double>(b.area()) - inter;
  return uni > 0.0 ? inter / uni : 0.0;
}

}  // namespace shapemotion
