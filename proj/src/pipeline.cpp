#include "shapemotion/pipeline.hpp"

#include <chrono>
#include <cmath>
#include <condition_variable>
#include <cstdio>
#include <deque>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "json.hpp"

#include "shapemotion/edges.hpp"
#include "shapemotion/filters.hpp"
#include "shapemotion/imgio.hpp"

namespace shapemotion {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

GrayFrame mask_as_gray(const BinaryMask& mask) {
  GrayFrame g;
  g.width = mask.width;
  g.height = mask.height;
  g.pixels = mask.pixels;
  return g;
}

BinaryMask detect_edges(const GrayFrame& frame, const PipelineConfig& cfg) {
  const ExecPolicy exec = cfg.exec();
  if (cfg.canny_low > 0.0 && cfg.canny_high > 0.0) {
    return canny(frame, cfg.canny_low, cfg.canny_high, cfg.blur_sigma, cfg.blur_radius, exec);
  }
  return canny_auto(frame, cfg.canny_high_ratio, cfg.blur_sigma, cfg.blur_radius, exec);
}

}  // namespace

void StreamState::ensure_dimensions(const GrayFrame& frame) {
  if (frame.width < 1 || frame.height < 1) {
    throw std::invalid_argument("pipeline: empty frame");
  }
  if (width_ == 0) {
    width_ = frame.width;
    height_ = frame.height;
    model_ = BackgroundModel::sized(width_, height_);
    prev_rendered_ = BinaryMask::black(width_, height_);
    return;
  }
  if (frame.width != width_ || frame.height != height_) {
    throw std::invalid_argument("pipeline: frame dimensions changed mid-stream");
  }
}

PrepOutput StreamState::stage_prepare(GrayFrame frame) {
  const auto t0 = Clock::now();
  if (frame.index <= last_index_) {
    throw std::invalid_argument("pipeline: out-of-order frame index");
  }
  ensure_dimensions(frame);
  last_index_ = frame.index;

  PrepOutput out;
  out.index = frame.index;
  out.timestamp = frame.timestamp;
  if (out.timestamp == 0.0 && frame.index > 0 && config_.fps > 0.0) {
    out.timestamp = frame.index / config_.fps;
  }

  const ExecPolicy exec = config_.exec();
  GrayFrame blurred = gaussian_blur(frame, config_.blur_sigma, config_.blur_radius, exec);

  if (config_.approach == Approach::Edge) {
    out.blurred = std::move(blurred);
    out.seconds = seconds_since(t0);
    return out;
  }

  mma_update(model_, blurred, exec, config_.t_max);
  if (model_.t <= config_.learning_period) {
    out.learning = true;
    out.seconds = seconds_since(t0);
    return out;
  }

  const double adaptive = adaptive_threshold(blurred, model_, config_.lambda, exec);
  const double threshold = std::max(adaptive, config_.threshold_floor);
  BinaryMask mask = foreground_mask(blurred, model_, threshold, exec);
  out.mask = morphology_sequence(mask, config_.morphology, config_.morph_iterations, exec);
  out.seconds = seconds_since(t0);
  return out;
}

DetectOutput StreamState::stage_detect(PrepOutput prep) const {
  const auto t0 = Clock::now();
  DetectOutput out;
  out.index = prep.index;
  out.timestamp = prep.timestamp;
  out.prep_seconds = prep.seconds;

  if (!prep.learning) {
    const GrayFrame* input = nullptr;
    GrayFrame from_mask;
    if (config_.approach == Approach::Background) {
      from_mask = mask_as_gray(prep.mask);
      input = &from_mask;
    } else {
      input = &prep.blurred;
    }
    const BinaryMask edges = detect_edges(*input, config_);
    ExtractConfig extract;
    extract.polygon_epsilon = config_.polygon_epsilon;
    extract.thresholds = config_.shape;
    out.detections = extract_objects(edges, prep.index, extract);
  }
  out.rendered = render_objects_image(out.detections, width_, height_);
  out.seconds = seconds_since(t0);
  return out;
}

FrameResult StreamState::stage_motion(DetectOutput det) {
  const auto t0 = Clock::now();
  FrameResult result;
  result.frame_index = det.index;
  result.timestamp = det.timestamp;

  const ExecPolicy exec = config_.exec();
  result.motion.frame_index = det.index;
  result.motion.sad = sad_distance(det.rendered, prev_rendered_, exec);
  result.motion.moving = motion_decision(result.motion.sad, config_.sad_threshold);

  result.tracks = associate(tracks_, det.detections, det.timestamp, config_.max_jump,
                            config_.meters_per_pixel);
  tracks_ = result.tracks;
  prev_rendered_ = std::move(det.rendered);

  result.detections = std::move(det.detections);
  result.stage_seconds["BackgroundDetector"] = det.prep_seconds;
  result.stage_seconds["ForegroundDetector"] = det.seconds;
  result.stage_seconds["MotionDetector"] = seconds_since(t0);
  return result;
}

FrameResult StreamState::process(GrayFrame frame) {
  return stage_motion(stage_detect(stage_prepare(std::move(frame))));
}

FrameResult StreamState::process(const ColorFrame& frame) {
  return process(to_grayscale(frame));
}

namespace {

/// Order-preserving single-producer single-consumer queue with a hard
/// capacity. close() wakes everyone; push after close reports failure so a
/// dead consumer cannot wedge its producer.
template <typename T>
class BoundedQueue {
 public:
  explicit BoundedQueue(std::size_t capacity) : capacity_(capacity) {}

  bool push(T item) {
    std::unique_lock lock(mutex_);
    not_full_.wait(lock, [&] { return items_.size() < capacity_ || closed_; });
    if (closed_) return false;
    items_.push_back(std::move(item));
    not_empty_.notify_one();
    return true;
  }

  std::optional<T> pop() {
    std::unique_lock lock(mutex_);
    not_empty_.wait(lock, [&] { return !items_.empty() || closed_; });
    if (items_.empty()) return std::nullopt;
    T item = std::move(items_.front());
    items_.pop_front();
    not_full_.notify_one();
    return item;
  }

  void close() {
    std::lock_guard lock(mutex_);
    closed_ = true;
    not_full_.notify_all();
    not_empty_.notify_all();
  }

 private:
  std::mutex mutex_;
  std::condition_variable not_full_;
  std::condition_variable not_empty_;
  std::deque<T> items_;
  std::size_t capacity_;
  bool closed_ = false;
};

void run_stream_parallel(const FrameSource& source, StreamState& state, const ResultSink& sink) {
  BoundedQueue<PrepOutput> prepared(4);
  BoundedQueue<DetectOutput> detected(4);
  std::exception_ptr errors[3] = {nullptr, nullptr, nullptr};

  std::thread prepare_thread([&] {
    try {
      while (auto frame = source()) {
        if (!prepared.push(state.stage_prepare(std::move(*frame)))) break;
      }
    } catch (...) {
      errors[0] = std::current_exception();
    }
    prepared.close();
  });

  std::thread detect_thread([&] {
    try {
      while (auto prep = prepared.pop()) {
        if (!detected.push(state.stage_detect(std::move(*prep)))) break;
      }
    } catch (...) {
      errors[1] = std::current_exception();
    }
    prepared.close();
    detected.close();
  });

  std::thread motion_thread([&] {
    try {
      while (auto det = detected.pop()) {
        sink(state.stage_motion(std::move(*det)));
      }
    } catch (...) {
      errors[2] = std::current_exception();
    }
    detected.close();
  });

  prepare_thread.join();
  detect_thread.join();
  motion_thread.join();
  for (std::exception_ptr& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace

void run_stream(const FrameSource& source, const PipelineConfig& config, const ResultSink& sink) {
  StreamState state(config);
  if (config.mode == ExecMode::Parallel) {
    run_stream_parallel(source, state, sink);
    return;
  }
  while (auto frame = source()) sink(state.process(std::move(*frame)));
}

std::vector<FrameResult> run_stream(const std::vector<GrayFrame>& frames,
                                    const PipelineConfig& config) {
  std::size_t next = 0;
  std::vector<FrameResult> results;
  results.reserve(frames.size());
  run_stream(
      [&]() -> std::optional<GrayFrame> {
        if (next >= frames.size()) return std::nullopt;
        return frames[next++];
      },
      config, [&](const FrameResult& r) { results.push_back(r); });
  return results;
}

std::vector<StageTiming> run_benchmark(const std::vector<GrayFrame>& frames,
                                       const PipelineConfig& config, ExecMode mode) {
  PipelineConfig cfg = config;
  cfg.mode = mode;
  cfg.approach = Approach::Background;
  if (static_cast<long>(frames.size()) < cfg.learning_period + 10) {
    throw std::invalid_argument("run_benchmark: need at least learning_period + 10 frames");
  }

  const char* stages[3] = {"BackgroundDetector", "ForegroundDetector", "MotionDetector"};
  double sums[3] = {0.0, 0.0, 0.0};
  long count = 0;
  for (const FrameResult& r : run_stream(frames, cfg)) {
    for (int s = 0; s < 3; ++s) sums[s] += r.stage_seconds.at(stages[s]);
    ++count;
  }

  std::vector<StageTiming> timings;
  for (int s = 0; s < 3; ++s) {
    timings.push_back({stages[s], sums[s] / static_cast<double>(count), mode, count});
  }
  return timings;
}

std::string format_benchmark_table(const std::vector<StageTiming>* sequential,
                                   const std::vector<StageTiming>* parallel) {
  const char* stages[3] = {"BackgroundDetector", "ForegroundDetector", "MotionDetector"};
  const auto cell = [](const std::vector<StageTiming>* timings, const char* stage) {
    if (timings) {
      for (const StageTiming& t : *timings) {
        if (t.stage == stage) {
          char buf[48];
          std::snprintf(buf, sizeof(buf), "%.6f sec", t.mean_seconds);
          return std::string(buf);
        }
      }
    }
    return std::string("-");
  };

  std::string out;
  char line[160];
  std::snprintf(line, sizeof(line), "%-20s %-18s %-18s\n", "Modules", "Sequential time",
                "Parallel time");
  out += line;
  for (const char* stage : stages) {
    std::snprintf(line, sizeof(line), "%-20s %-18s %-18s\n", stage,
                  cell(sequential, stage).c_str(), cell(parallel, stage).c_str());
    out += line;
  }
  return out;
}

namespace {

double round6(double v) { return std::round(v * 1e6) / 1e6; }

}  // namespace

std::string to_jsonl_line(const FrameResult& r) {
  using ordered_json = nlohmann::ordered_json;
  ordered_json j;
  j["frame"] = r.frame_index;
  j["t"] = round6(r.timestamp);
  ordered_json objects = ordered_json::array();
  for (const ShapeDetection& d : r.detections) {
    objects.push_back({{"label", to_string(d.label)},
                       {"centroid", {round6(d.metrics.centroid.x), round6(d.metrics.centroid.y)}},
                       {"bbox", {d.bbox.x0, d.bbox.y0, d.bbox.x1, d.bbox.y1}},
                       {"area", round6(d.metrics.area)},
                       {"vertices", d.polygon.vertices.size()}});
  }
  j["objects"] = std::move(objects);
  j["sad"] = round6(r.motion.sad);
  j["moving"] = r.motion.moving;
  ordered_json speeds = ordered_json::array();
  for (const TrackedObject& t : r.tracks) {
    if (t.speed_mps) {
      speeds.push_back({{"label", to_string(t.label)}, {"mps", round6(*t.speed_mps)}});
    }
  }
  j["speeds"] = std::move(speeds);
  return j.dump();
}

PredictedFrame predicted_frame_from_jsonl(const std::string& line) {
  const nlohmann::json j = nlohmann::json::parse(line);
  PredictedFrame pred;
  pred.index = j.at("frame").get<int>();
  if (j.contains("objects")) {
    for (const nlohmann::json& jo : j.at("objects")) {
      ShapeDetection det;
      det.label = shape_label_from_string(jo.at("label").get<std::string>());
      det.bbox = {jo.at("bbox")[0].get<int>(), jo.at("bbox")[1].get<int>(),
                  jo.at("bbox")[2].get<int>(), jo.at("bbox")[3].get<int>()};
      if (jo.contains("centroid")) {
        det.metrics.centroid = {jo.at("centroid")[0].get<double>(),
                                jo.at("centroid")[1].get<double>()};
      }
      det.frame_index = pred.index;
      pred.detections.push_back(std::move(det));
    }
  }
  return pred;
}

}  // namespace shapemotion
