#pragma once

#include <optional>
#include <string>
#include <vector>

#include "shapemotion/contours.hpp"
#include "shapemotion/frame.hpp"
#include "shapemotion/geometry.hpp"

namespace shapemotion {

enum class ShapeLabel { Circle, Ellipse, Square, Rectangle };

std::string to_string(ShapeLabel label);
ShapeLabel shape_label_from_string(const std::string& name);

/// Decision thresholds for classify_shape. All quantities except min_area
/// are scale-free.
struct ShapeThresholds {
  double min_area = 100.0;          // px^2
  double corner_cos_max = 0.3;      // |cos| bound for a right-angled corner
  double side_ratio_max = 1.15;     // max/min side of a square
  double circle_circularity = 0.85;
  double ellipse_circularity = 0.60;
  double axis_ratio_min = 0.90;     // minor/major bound separating circle/ellipse
};

struct ShapeDetection {
  ShapeLabel label = ShapeLabel::Circle;
  Polygon polygon;
  ContourMetrics metrics;
  BBox bbox;
  int frame_index = 0;
};

/// Classifies a simplified polygon, or nothing when it matches no sought
/// shape. Requires convexity and the minimum area; quadrilaterals must be
/// right-angled, and round shapes are separated by circularity and the
/// second-moment axis ratio.
std::optional<ShapeLabel> classify_shape(const Polygon& polygon, const ContourMetrics& metrics,
                                         const ShapeThresholds& thresholds = {});

struct ExtractConfig {
  double polygon_epsilon = 0.02;  // fraction of the contour perimeter
  ShapeThresholds thresholds;
};

/// trace_contours -> approx_polygon -> contour_metrics -> classify_shape,
/// dropping everything unclassifiable.
std::vector<ShapeDetection> extract_objects(const BinaryMask& mask, int frame_index,
                                            const ExtractConfig& config = {});

/// Paints each detection's polygon interior white on a black canvas
/// (even-odd scanline fill). Order-independent for disjoint objects.
BinaryMask render_objects_image(const std::vector<ShapeDetection>& detections, int width,
                                int height);

}  // namespace shapemotion
