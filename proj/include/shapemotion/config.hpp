#pragma once

#include <string>
#include <vector>

#include "shapemotion/exec.hpp"
#include "shapemotion/filters.hpp"
#include "shapemotion/shapes.hpp"

namespace shapemotion {

enum class Approach { Background, Edge };

Approach approach_from_string(const std::string& name);
std::string to_string(Approach approach);

/// Every knob of both pipelines. Loadable from a flat key=value file;
/// unknown keys are rejected.
struct PipelineConfig {
  Approach approach = Approach::Background;

  // Background model (first approach)
  double lambda = 1.0;          // coefficient of inhibition
  int learning_period = 30;     // K: frames absorbed before detection starts
  double threshold_floor = 2.0; // lower bound on the segmentation threshold
  long t_max = 0;               // 0 = uncapped running mean

  // Smoothing
  double blur_sigma = 1.4;
  int blur_radius = 2;

  // Canny: explicit thresholds when low/high > 0, otherwise scene-adaptive
  // high = canny_high_ratio * max gradient magnitude, low = high / 2.
  double canny_low = 0.0;
  double canny_high = 0.0;
  double canny_high_ratio = 0.3;

  // Foreground cleanup (first approach)
  std::vector<MorphOp> morphology = {MorphOp::Open, MorphOp::Close};
  int morph_iterations = 1;

  // Contour simplification and shape rules
  double polygon_epsilon = 0.02;  // fraction of the contour perimeter
  ShapeThresholds shape;

  // Motion
  double sad_threshold = 1.0;
  double max_jump = 50.0;
  double meters_per_pixel = 0.01;
  double fps = 10.0;

  // Execution
  ExecMode mode = ExecMode::Sequential;
  int workers = 0;

  ExecPolicy exec() const { return {mode, workers}; }
};

/// Applies key=value lines ('#' comments and blank lines ignored) on top of
/// the given config. Later assignments win.
PipelineConfig apply_config_text(PipelineConfig base, const std::string& text);
PipelineConfig load_config(const std::string& path, PipelineConfig base = {});

/// Single key=value assignment, shared with CLI flag overrides.
void apply_config_entry(PipelineConfig& config, const std::string& key,
                        const std::string& value);

}  // namespace shapemotion
