#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "shapemotion/background.hpp"
#include "shapemotion/config.hpp"
#include "shapemotion/frame.hpp"
#include "shapemotion/motion.hpp"
#include "shapemotion/shapes.hpp"

namespace shapemotion {

struct FrameResult {
  int frame_index = 0;
  double timestamp = 0.0;
  std::vector<ShapeDetection> detections;
  MotionReport motion;
  std::vector<TrackedObject> tracks;
  std::map<std::string, double> stage_seconds;
};

struct StageTiming {
  std::string stage;  // BackgroundDetector | ForegroundDetector | MotionDetector
  double mean_seconds = 0.0;
  ExecMode mode = ExecMode::Sequential;
  long invocations = 0;
};

/// Intermediate carried from the background stage to the detection stage.
struct PrepOutput {
  int index = 0;
  double timestamp = 0.0;
  BinaryMask mask;       // first approach: cleaned foreground mask
  GrayFrame blurred;     // second approach: smoothed frame for edge detection
  bool learning = false; // inside the learning period, detection suppressed
  double seconds = 0.0;
};

/// Intermediate carried from the detection stage to the motion stage.
struct DetectOutput {
  int index = 0;
  double timestamp = 0.0;
  std::vector<ShapeDetection> detections;
  BinaryMask rendered;
  double prep_seconds = 0.0;
  double seconds = 0.0;
};

/// Per-stream state: the background model, the previous rendered-objects
/// image, and the open tracks. Each piece is owned by exactly one stage, so
/// the stages can run pipelined on separate threads.
class StreamState {
 public:
  explicit StreamState(PipelineConfig config) : config_(std::move(config)) {}

  /// Stage 1 (BackgroundDetector): grayscale smoothing plus, under the first
  /// approach, the running-mean update, adaptive threshold, segmentation and
  /// morphology. During frames 1..K only the model update runs.
  PrepOutput stage_prepare(GrayFrame frame);

  /// Stage 2 (ForegroundDetector): edge detection, contour tracing, shape
  /// classification and the rendered-objects image. Pure.
  DetectOutput stage_detect(PrepOutput prep) const;

  /// Stage 3 (MotionDetector): SAD against the previous rendered image,
  /// motion decision, association and speed estimation.
  FrameResult stage_motion(DetectOutput det);

  /// All three stages in order.
  FrameResult process(GrayFrame frame);
  FrameResult process(const ColorFrame& frame);

  const PipelineConfig& config() const { return config_; }
  const BackgroundModel& model() const { return model_; }

 private:
  void ensure_dimensions(const GrayFrame& frame);

  PipelineConfig config_;
  int width_ = 0;
  int height_ = 0;
  int last_index_ = -1;
  BackgroundModel model_;
  BinaryMask prev_rendered_;
  std::vector<TrackedObject> tracks_;
};

using FrameSource = std::function<std::optional<GrayFrame>()>;
using ResultSink = std::function<void(const FrameResult&)>;

/// Streams frames through the configured approach. Sequential mode runs the
/// stage groups inline; parallel mode pipelines them across three threads
/// joined by bounded in-order queues (capacity 4) while the kernels split
/// rows across OpenMP workers. Both modes produce identical results.
void run_stream(const FrameSource& source, const PipelineConfig& config, const ResultSink& sink);
std::vector<FrameResult> run_stream(const std::vector<GrayFrame>& frames,
                                    const PipelineConfig& config);

/// Runs the full first-approach pipeline in the requested mode and reports
/// the mean wall time of each stage group. Requires at least
/// learning_period + 10 frames.
std::vector<StageTiming> run_benchmark(const std::vector<GrayFrame>& frames,
                                       const PipelineConfig& config, ExecMode mode);

/// Text table with columns Modules | Sequential time | Parallel time.
/// Either column may be null.
std::string format_benchmark_table(const std::vector<StageTiming>* sequential,
                                   const std::vector<StageTiming>* parallel);

/// One line per frame:
/// {"frame":n,"t":sec,"objects":[...],"sad":x,"moving":bool,"speeds":[...]}
std::string to_jsonl_line(const FrameResult& result);

/// Detections parsed back from a JSONL line (label and bbox are what the
/// evaluation consumes).
struct PredictedFrame {
  int index = 0;
  std::vector<ShapeDetection> detections;
};
PredictedFrame predicted_frame_from_jsonl(const std::string& line);

}  // namespace shapemotion
