#pragma once

#include <climits>
#include <string>
#include <variant>
#include <vector>

#include "shapemotion/eval.hpp"
#include "shapemotion/frame.hpp"
#include "shapemotion/geometry.hpp"
#include "shapemotion/shapes.hpp"

namespace shapemotion {

struct LinearPath {
  PointD start;     // object center at frame 0
  PointD velocity;  // px per frame
};

struct CircularPath {
  PointD center;
  double radius = 0.0;
  double displacement = 0.0;  // arc length per frame, px
  double start_angle = 0.0;   // radians
};

using Trajectory = std::variant<LinearPath, CircularPath>;

/// Object center at the given frame.
PointD trajectory_position(const Trajectory& path, int frame);

struct ObjectSpec {
  ShapeLabel shape = ShapeLabel::Square;
  // circle: {radius}; ellipse: {rx, ry}; square: {side}; rectangle: {w, h}
  std::vector<double> size;
  int fill = 255;
  Trajectory path = LinearPath{};
  double rotation = 0.0;  // radians, about the object center
  int first_frame = 0;    // visibility window [first_frame, last_frame]
  int last_frame = INT_MAX;
};

/// Background intensity from this column onward (bands sorted by x0).
struct BackgroundBand {
  int x0 = 0;
  int value = 0;
};

struct Scenario {
  int width = 0;
  int height = 0;
  int background = 0;
  std::vector<BackgroundBand> background_bands;  // optional per-region intensities
  std::vector<ObjectSpec> objects;
  int noise_amplitude = 0;  // uniform in [-amp, +amp], seeded per frame
  std::uint64_t seed = 0;
  double fps = 10.0;
  double meters_per_pixel = 0.01;
};

struct SynthResult {
  std::vector<GrayFrame> frames;
  std::vector<GroundTruthFrame> truth;
};

/// Renders the scenario deterministically. Shapes are filled rasters;
/// ground truth (centroid, bbox, area) is derived analytically from the
/// trajectory, never from the raster. Throws if an object's footprint
/// leaves the canvas on any frame it is visible, or a size parameter
/// is <= 2 px.
SynthResult generate_sequence(const Scenario& scenario, int frame_count);

/// Ground truth JSON:
/// {"frames":[{"index":n,"objects":[{"label":...,"centroid":[x,y],
///   "bbox":[x0,y0,x1,y1],"area":a}]}]}
std::string truth_to_json(const std::vector<GroundTruthFrame>& truth);
std::vector<GroundTruthFrame> truth_from_json(const std::string& text);

Scenario scenario_from_json(const std::string& text);
Scenario load_scenario(const std::string& path);

}  // namespace shapemotion
