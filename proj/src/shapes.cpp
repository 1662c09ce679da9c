#include "shapemotion/shapes.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace shapemotion {

std::string to_string(ShapeLabel label) {
  switch (label) {
    case ShapeLabel::Circle: return "circle";
    case ShapeLabel::Ellipse: return "ellipse";
    case ShapeLabel::Square: return "square";
    case ShapeLabel::Rectangle: return "rectangle";
  }
  return "?";
}

ShapeLabel shape_label_from_string(const std::string& name) {
  if (name == "circle") return ShapeLabel::Circle;
  if (name == "ellipse") return ShapeLabel::Ellipse;
  if (name == "square") return ShapeLabel::Square;
  if (name == "rectangle") return ShapeLabel::Rectangle;
  throw std::invalid_argument("unknown shape label: " + name);
}

std::optional<ShapeLabel> classify_shape(const Polygon& polygon, const ContourMetrics& metrics,
                                         const ShapeThresholds& th) {
  if (metrics.degenerate || !metrics.convex || metrics.area < th.min_area) return std::nullopt;
  const std::size_t n = polygon.vertices.size();

  if (n == 4) {
    double min_side = 0.0, max_side = 0.0;
    for (std::size_t i = 0; i < 4; ++i) {
      const PointD& prev = polygon.vertices[(i + 3) % 4];
      const PointD& cur = polygon.vertices[i];
      const PointD& next = polygon.vertices[(i + 1) % 4];
      const double ux = prev.x - cur.x, uy = prev.y - cur.y;
      const double vx = next.x - cur.x, vy = next.y - cur.y;
      const double lu = std::hypot(ux, uy);
      const double lv = std::hypot(vx, vy);
      if (lu <= 0.0 || lv <= 0.0) return std::nullopt;
      const double cosine = (ux * vx + uy * vy) / (lu * lv);
      if (std::abs(cosine) > th.corner_cos_max) return std::nullopt;  // not right-angled
      min_side = i == 0 ? lv : std::min(min_side, lv);
      max_side = i == 0 ? lv : std::max(max_side, lv);
    }
    return max_side / min_side <= th.side_ratio_max ? ShapeLabel::Square : ShapeLabel::Rectangle;
  }

  if (n >= 8) {
    const double ratio = axis_ratio(polygon);
    if (metrics.circularity >= th.circle_circularity && ratio >= th.axis_ratio_min) {
      return ShapeLabel::Circle;
    }
    if (metrics.circularity >= th.ellipse_circularity && ratio < th.axis_ratio_min) {
      return ShapeLabel::Ellipse;
    }
  }
  return std::nullopt;  // 3, 5, 6, 7 vertices and everything unmatched
}

std::vector<ShapeDetection> extract_objects(const BinaryMask& mask, int frame_index,
                                            const ExtractConfig& config) {
  std::vector<ShapeDetection> detections;
  for (const Contour& contour : trace_contours(mask)) {
    const double eps = config.polygon_epsilon * contour.perimeter();
    Polygon poly = approx_polygon(contour, eps);
    if (poly.vertices.size() < 3) continue;
    ContourMetrics metrics = contour_metrics(poly);
    const auto label = classify_shape(poly, metrics, config.thresholds);
    if (!label) continue;
    ShapeDetection det;
    det.label = *label;
    det.polygon = std::move(poly);
    det.metrics = metrics;
    det.bbox = contour.bounds();
    det.frame_index = frame_index;
    detections.push_back(std::move(det));
  }
  return detections;
}

namespace {

void fill_polygon(const Polygon& poly, BinaryMask& mask) {
  const std::size_t n = poly.vertices.size();
  if (n < 3) return;
  double min_y = poly.vertices[0].y, max_y = poly.vertices[0].y;
  for (const PointD& v : poly.vertices) {
    min_y = std::min(min_y, v.y);
    max_y = std::max(max_y, v.y);
  }
  const int y_begin = std::max(0, static_cast<int>(std::floor(min_y)));
  const int y_end = std::min(mask.height - 1, static_cast<int>(std::ceil(max_y)));

  std::vector<double> xs;
  for (int y = y_begin; y <= y_end; ++y) {
    xs.clear();
    const double fy = static_cast<double>(y);
    for (std::size_t i = 0; i < n; ++i) {
      const PointD& a = poly.vertices[i];
      const PointD& b = poly.vertices[(i + 1) % n];
      if (a.y == b.y) continue;
      const double lo = std::min(a.y, b.y);
      const double hi = std::max(a.y, b.y);
      if (fy < lo || fy >= hi) continue;  // half-open rule keeps vertex rows consistent
      xs.push_back(a.x + (fy - a.y) * (b.x - a.x) / (b.y - a.y));
    }
    std::sort(xs.begin(), xs.end());
    for (std::size_t k = 0; k + 1 < xs.size(); k += 2) {
      int x0 = static_cast<int>(std::ceil(xs[k] - 1e-9));
      int x1 = static_cast<int>(std::ceil(xs[k + 1] - 1e-9)) - 1;
      x0 = std::max(x0, 0);
      x1 = std::min(x1, mask.width - 1);
      for (int x = x0; x <= x1; ++x) mask.at(x, y) = 255;
    }
  }
}

}  // namespace

BinaryMask render_objects_image(const std::vector<ShapeDetection>& detections, int width,
                                int height) {
  BinaryMask canvas = BinaryMask::black(width, height);
  for (const ShapeDetection& det : detections) fill_polygon(det.polygon, canvas);
  return canvas;
}

}  // namespace shapemotion
