#pragma once

#include <optional>
#include <vector>

#include "shapemotion/exec.hpp"
#include "shapemotion/frame.hpp"
#include "shapemotion/geometry.hpp"
#include "shapemotion/shapes.hpp"

namespace shapemotion {

struct MotionReport {
  double sad = 0.0;
  bool moving = false;
  int frame_index = 0;
};

struct TrackedObject {
  PointD centroid;
  double timestamp = 0.0;
  ShapeLabel label = ShapeLabel::Circle;
  std::optional<double> speed_mps;  // defined once associated across frames
};

/// Mean absolute pixel difference (SAD normalized by the pixel count).
double sad_distance(const GrayFrame& a, const GrayFrame& b, const ExecPolicy& exec = {});
double sad_distance(const BinaryMask& a, const BinaryMask& b, const ExecPolicy& exec = {});

/// True iff sad is strictly greater than the threshold.
bool motion_decision(double sad, double threshold);

/// meters_per_pixel * |P_i - P_{i-1}| / (T_i - T_{i-1}).
double estimate_speed(const TrackedObject& prev, const TrackedObject& cur,
                      double meters_per_pixel);

/// Greedy nearest-centroid association restricted to matching labels and
/// displacements <= max_jump. Unmatched detections start new tracks with
/// undefined speed; ties break on smaller distance, then detection order.
std::vector<TrackedObject> associate(const std::vector<TrackedObject>& prev,
                                     const std::vector<ShapeDetection>& cur,
                                     double cur_timestamp, double max_jump,
                                     double meters_per_pixel);

}  // namespace shapemotion
