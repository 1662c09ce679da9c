// Acceptance suite: one line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <thread>
#include <vector>

#include "shapemotion/background.hpp"
#include "shapemotion/cli.hpp"
#include "shapemotion/edges.hpp"
#include "shapemotion/eval.hpp"
#include "shapemotion/filters.hpp"
#include "shapemotion/motion.hpp"
#include "shapemotion/pipeline.hpp"
#include "shapemotion/synth.hpp"

#include "scenario_helpers.hpp"
#include "test_helpers.hpp"

using namespace shapemotion;
using namespace shapemotion::testing;

namespace {

using Clock = std::chrono::steady_clock;

struct Failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void require(bool cond, const std::string& msg) {
  if (!cond) throw Failure(msg);
}

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), pattern, a, b, c);
  return buf;
}

// ---------------------------------------------------------------- criterion 1

std::string criterion_background_mean() {
  const auto t0 = Clock::now();
  BackgroundModel model = BackgroundModel::sized(64, 64);
  std::vector<double> sums(model.mean.size(), 0.0);
  for (int i = 0; i < 100; ++i) {
    const GrayFrame f = random_frame(64, 64, 5000 + i);
    mma_update(model, f);
    for (std::size_t p = 0; p < sums.size(); ++p) sums[p] += f.pixels[p];
  }
  double max_err = 0.0;
  for (std::size_t p = 0; p < sums.size(); ++p) {
    max_err = std::max(max_err, std::abs(model.mean[p] - sums[p] / 100.0));
  }
  const double elapsed = std::chrono::duration<double>(Clock::now() - t0).count();
  require(max_err < 1e-9, fmt("model deviates from the brute-force mean by %.3g", max_err));
  require(elapsed < 1.0, fmt("took %.3f s (limit 1 s)", elapsed));
  return fmt("max |model - mean| = %.2e over 100 frames in %.3f s", max_err, elapsed);
}

// ---------------------------------------------------------------- criterion 2

std::string criterion_threshold_properties() {
  std::mt19937 rng(42);
  for (int trial = 0; trial < 10; ++trial) {
    BackgroundModel model = BackgroundModel::sized(32, 32);
    mma_update(model, random_frame(32, 32, 900 + trial));
    const GrayFrame frame = random_frame(32, 32, 300 + trial);

    // homogeneity in lambda, exact
    std::uniform_real_distribution<double> lam(0.1, 4.0);
    const double l = lam(rng);
    const double base = adaptive_threshold(frame, model, l);
    require(adaptive_threshold(frame, model, 2.0 * l) == 2.0 * base,
            "threshold is not exactly homogeneous in lambda");

    // mask monotonicity in the threshold
    BinaryMask prev = foreground_mask(frame, model, 0.0);
    for (double th : {1.0, 3.0, 9.0, 27.0, 81.0}) {
      const BinaryMask cur = foreground_mask(frame, model, th);
      for (std::size_t p = 0; p < cur.pixels.size(); ++p) {
        require(cur.pixels[p] != 255 || prev.pixels[p] == 255,
                "raising the threshold added a white pixel");
      }
      prev = cur;
    }

    // uniform |I - B| = c gives lambda * c, exact
    std::uniform_int_distribution<int> cdist(1, 60);
    const int c = cdist(rng);
    GrayFrame uniform = GrayFrame::filled(32, 32, 200);
    BackgroundModel um = BackgroundModel::sized(32, 32);
    for (double& v : um.mean) v = 200.0 - c;
    require(adaptive_threshold(uniform, um, l) == l * c,
            "uniform-difference threshold is not exactly lambda * c");
  }
  return "homogeneity, monotonicity and the uniform case hold on 10 random 32x32 fixtures";
}

// ---------------------------------------------------------------- criterion 3

std::string criterion_canny() {
  require(canny(GrayFrame::filled(16, 16, 77), 20, 60).white_count() == 0,
          "constant frame produced edge pixels");

  GrayFrame step = GrayFrame::filled(16, 16, 0);
  for (int y = 0; y < 16; ++y) {
    for (int x = 8; x < 16; ++x) step.at(x, y) = 255;
  }
  const BinaryMask edges = canny(step, 20, 60);
  for (int y = 0; y < 16; ++y) {
    int count = 0, col = -1;
    for (int x = 0; x < 16; ++x) {
      if (edges.white(x, y)) {
        ++count;
        col = x;
      }
    }
    require(count == 1, fmt("step row has %g edge pixels instead of one", count));
    require(std::abs(col - 7.5) <= 1.0, fmt("edge column %g is more than 1 px from 7.5", col));
  }

  for (std::uint32_t seed = 0; seed < 20; ++seed) {
    const GrayFrame f = random_frame(24, 24, 7000 + seed);
    const BinaryMask base = canny(f, 10, 40);
    const BinaryMask hh = canny(f, 10, 70);
    const BinaryMask hl = canny(f, 25, 40);
    for (std::size_t p = 0; p < base.pixels.size(); ++p) {
      require(hh.pixels[p] != 255 || base.pixels[p] == 255, "raising high added an edge pixel");
      require(hl.pixels[p] != 255 || base.pixels[p] == 255, "raising low added an edge pixel");
    }
  }
  return "constant-empty, single-column step, and threshold monotonicity over 20 frames";
}

// ---------------------------------------------------------------- criterion 4

struct CorpusInstance {
  ShapeLabel label;
  std::vector<double> size;
};

std::string criterion_shape_corpus() {
  std::vector<CorpusInstance> instances;
  for (double side : {30.0, 60.0, 90.0}) instances.push_back({ShapeLabel::Square, {side}});
  for (double w : {60.0, 90.0, 120.0}) instances.push_back({ShapeLabel::Rectangle, {w, w / 2.0}});
  for (double r : {15.0, 30.0, 45.0}) instances.push_back({ShapeLabel::Circle, {r}});
  for (double rx : {30.0, 45.0, 60.0}) instances.push_back({ShapeLabel::Ellipse, {rx, rx / 2.0}});

  PipelineConfig cfg;
  cfg.approach = Approach::Edge;

  std::mt19937 rng(1234);
  int total = 0, correct = 0;
  int shoelace_checked = 0;
  for (const CorpusInstance& inst : instances) {
    const double ex = inst.size[0];
    const double ey = inst.size.size() > 1 ? inst.size[1] : inst.size[0];
    // margin: half extent for rectangles, full radius for round shapes
    const bool round_shape = inst.label == ShapeLabel::Circle || inst.label == ShapeLabel::Ellipse;
    const double mx = round_shape ? ex : ex / 2.0;
    const double my = round_shape ? ey : ey / 2.0;
    std::uniform_real_distribution<double> px(mx + 8.0, 320.0 - mx - 8.0);
    std::uniform_real_distribution<double> py(my + 8.0, 240.0 - my - 8.0);
    for (int k = 0; k < 10; ++k) {
      Scenario sc;
      sc.width = 320;
      sc.height = 240;
      sc.background = 40;
      sc.noise_amplitude = 5;
      sc.seed = 777 + total;
      ObjectSpec obj;
      obj.shape = inst.label;
      obj.size = inst.size;
      obj.fill = 220;
      obj.path = LinearPath{{px(rng), py(rng)}, {0, 0}};
      sc.objects = {obj};
      const SynthResult synth = generate_sequence(sc, 1);
      const auto results = run_stream(synth.frames, cfg);
      ++total;
      if (results[0].detections.size() == 1 &&
          results[0].detections[0].label == inst.label &&
          iou(results[0].detections[0].bbox, synth.truth[0].objects[0].bbox) >= 0.5) {
        ++correct;
      }

      // Shoelace area of the traced silhouette against its pixel count.
      Scenario clean = sc;
      clean.noise_amplitude = 0;
      const SynthResult cleaned = generate_sequence(clean, 1);
      BinaryMask silhouette = BinaryMask::black(320, 240);
      for (std::size_t p = 0; p < silhouette.pixels.size(); ++p) {
        silhouette.pixels[p] = cleaned.frames[0].pixels[p] == 220 ? 255 : 0;
      }
      const auto contours = trace_contours(silhouette);
      require(contours.size() == 1, "silhouette traced to more than one contour");
      const ContourMetrics m = contour_metrics(approx_polygon(contours[0], 0.0));
      const double count = double(silhouette.white_count());
      require(std::abs(m.area - count) <= contours[0].perimeter(),
              fmt("shoelace area %g vs pixel count %g exceeds the perimeter band", m.area, count));
      ++shoelace_checked;
    }
  }
  const double accuracy = double(correct) / double(total);
  require(accuracy >= 0.95, fmt("classification accuracy %.3f < 0.95", accuracy));
  return fmt("accuracy %.3f over %g instances; shoelace-vs-count held on %g silhouettes",
             accuracy, double(total), double(shoelace_checked));
}

// ---------------------------------------------------------------- criterion 5

std::string criterion_metrics_and_moving_object() {
  struct Row {
    long tp, fp, fn;
    double r, p, f1;
  };
  const Row rows[] = {
      {124, 1, 26, 0.83, 0.99, 0.90},   {271, 28, 16, 0.94, 0.91, 0.92},
      {115, 20, 35, 0.77, 0.85, 0.81},  {112, 30, 38, 0.75, 0.79, 0.77},
      {120, 9, 30, 0.80, 0.93, 0.86},   {290, 20, 60, 0.83, 0.93, 0.88},
      {116, 140, 34, 0.77, 0.45, 0.57}, {60, 35, 90, 0.40, 0.63, 0.49},
  };
  for (const Row& row : rows) {
    const Metrics m = compute_metrics({row.tp, row.fp, row.fn});
    require(std::abs(m.recall - row.r) <= 0.01 && std::abs(m.precision - row.p) <= 0.01 &&
                std::abs(m.f1 - row.f1) <= 0.01,
            "printed R/P/F1 row not reproduced within 0.01");
  }

  MovingSquareScene scene = moving_square_scene();
  const SynthResult synth = generate_sequence(scene.scenario, scene.frame_count);
  const auto results = run_stream(synth.frames, scene.config);
  EvalCounts totals;
  for (int f = 0; f < scene.frame_count; ++f) {
    totals += match_detections(results[f].detections, synth.truth[f], 0.5);
  }
  const Metrics m = compute_metrics(totals);
  require(m.recall >= 0.85, fmt("single-moving-object recall %.3f < 0.85", m.recall));
  require(m.precision >= 0.90, fmt("single-moving-object precision %.3f < 0.90", m.precision));
  return fmt("8 printed rows reproduced; moving-object recall %.3f, precision %.3f", m.recall,
             m.precision);
}

// ---------------------------------------------------------------- criterion 6

GrayFrame average_frames(const GrayFrame& a, const GrayFrame& b) {
  GrayFrame out = b;
  for (std::size_t i = 0; i < out.pixels.size(); ++i) {
    out.pixels[i] = static_cast<std::uint8_t>((int(a.pixels[i]) + int(b.pixels[i]) + 1) / 2);
  }
  return out;
}

std::string criterion_sad_and_speed() {
  const GrayFrame f = random_frame(16, 16, 99);
  require(sad_distance(f, f) == 0.0, "SAD of identical frames is not exactly zero");

  GrayFrame a = GrayFrame::filled(2, 2, 0);
  a.pixels = {0, 10, 20, 30};
  GrayFrame b = GrayFrame::filled(2, 2, 0);
  b.pixels = {5, 10, 20, 26};
  require(sad_distance(a, b) == 2.25, "2x2 hand case is not exactly 2.25");

  // speed: 3 px/frame at 10 fps and 0.01 m/px -> 0.30 m/s
  Scenario sc;
  sc.width = 160;
  sc.height = 96;
  sc.background = 40;
  sc.fps = 10.0;
  sc.meters_per_pixel = 0.01;
  ObjectSpec sq;
  sq.shape = ShapeLabel::Square;
  sq.size = {24};
  sq.fill = 220;
  sq.path = LinearPath{{30, 48}, {3, 0}};
  sc.objects = {sq};
  PipelineConfig cfg;
  cfg.approach = Approach::Edge;
  const SynthResult synth = generate_sequence(sc, 20);
  double speed_sum = 0.0;
  int speed_count = 0;
  for (const FrameResult& r : run_stream(synth.frames, cfg)) {
    for (const TrackedObject& t : r.tracks) {
      if (t.speed_mps) {
        speed_sum += *t.speed_mps;
        ++speed_count;
      }
    }
  }
  require(speed_count > 0, "no speeds were estimated");
  const double mean_speed = speed_sum / speed_count;
  require(std::abs(mean_speed - 0.30) <= 0.05 * 0.30,
          fmt("estimated speed %.4f not within 5%% of 0.30", mean_speed));

  // recall degrades monotonically with displacement under 2-frame motion blur
  const int displacements[] = {1, 3, 6, 10, 15, 22, 30};
  std::vector<long> tps;
  for (const int d : displacements) {
    Scenario run_sc;
    run_sc.width = 640;
    run_sc.height = 160;
    run_sc.background = 40;
    ObjectSpec obj;
    obj.shape = ShapeLabel::Square;
    obj.size = {40};
    obj.fill = 220;
    obj.path = LinearPath{{60, 80}, {double(d), 0}};
    run_sc.objects = {obj};
    const int frames = 14;
    const SynthResult clean = generate_sequence(run_sc, frames);
    std::vector<GrayFrame> blurred = clean.frames;
    for (int i = frames - 1; i >= 1; --i) {
      blurred[i] = average_frames(clean.frames[i - 1], clean.frames[i]);
      blurred[i].index = clean.frames[i].index;
      blurred[i].timestamp = clean.frames[i].timestamp;
    }
    const auto results = run_stream(blurred, cfg);
    EvalCounts totals;
    for (int fidx = 0; fidx < frames; ++fidx) {
      totals += match_detections(results[fidx].detections, clean.truth[fidx], 0.5);
    }
    tps.push_back(totals.tp);
  }
  std::ostringstream ladder;
  for (std::size_t i = 0; i < tps.size(); ++i) {
    ladder << (i ? "," : "") << tps[i];
    if (i > 0) {
      require(tps[i] <= tps[i - 1] + 1,
              "recall increased by more than one detection as displacement rose");
    }
  }
  return fmt("SAD checks exact; mean speed %.4f m/s;", mean_speed) +
         " detection ladder [" + ladder.str() + "] non-increasing";
}

// ---------------------------------------------------------------- criterion 7

bool results_equal(const FrameResult& a, const FrameResult& b) {
  if (a.frame_index != b.frame_index || a.detections.size() != b.detections.size()) return false;
  for (std::size_t i = 0; i < a.detections.size(); ++i) {
    if (a.detections[i].label != b.detections[i].label) return false;
    if (!(a.detections[i].bbox == b.detections[i].bbox)) return false;
  }
  if (std::abs(a.motion.sad - b.motion.sad) > 1e-9 || a.motion.moving != b.motion.moving)
    return false;
  if (a.tracks.size() != b.tracks.size()) return false;
  for (std::size_t i = 0; i < a.tracks.size(); ++i) {
    if (a.tracks[i].speed_mps.has_value() != b.tracks[i].speed_mps.has_value()) return false;
    if (a.tracks[i].speed_mps && std::abs(*a.tracks[i].speed_mps - *b.tracks[i].speed_mps) > 1e-9)
      return false;
  }
  return true;
}

std::string criterion_parallel() {
  Scenario sc;
  sc.width = 640;
  sc.height = 480;
  sc.background = 40;
  sc.noise_amplitude = 12;
  sc.seed = 31;
  sc.objects = {entering_object(ShapeLabel::Square, {48}, 140, 80.0, 240.0, 3.0, 0.0, 40)};
  const int frames = 100;
  const SynthResult synth = generate_sequence(sc, frames);

  PipelineConfig cfg;
  cfg.approach = Approach::Background;
  cfg.lambda = 2.0;
  cfg.learning_period = 30;

  PipelineConfig seq_cfg = cfg;
  seq_cfg.mode = ExecMode::Sequential;
  PipelineConfig par_cfg = cfg;
  par_cfg.mode = ExecMode::Parallel;

  const auto t0 = Clock::now();
  const auto seq = run_stream(synth.frames, seq_cfg);
  const double seq_elapsed = std::chrono::duration<double>(Clock::now() - t0).count();
  const auto t1 = Clock::now();
  const auto par = run_stream(synth.frames, par_cfg);
  const double par_elapsed = std::chrono::duration<double>(Clock::now() - t1).count();

  require(seq.size() == par.size(), "frame counts differ between modes");
  for (std::size_t i = 0; i < seq.size(); ++i) {
    require(results_equal(seq[i], par[i]),
            fmt("parallel result differs from sequential at frame %g", double(i)));
  }

  const double ratio = par_elapsed > 0.0 ? seq_elapsed / par_elapsed : 0.0;
  const unsigned cores = std::thread::hardware_concurrency();
  std::string detail = fmt("identical results over 100 frames at 640x480; speedup %.2fx "
                           "(seq %.2f s, par %.2f s)",
                           ratio, seq_elapsed, par_elapsed);
  if (cores >= 4) {
    require(ratio >= 1.5, fmt("parallel throughput %.2fx < 1.5x on a %g-core host", ratio,
                              double(cores)));
    return detail + fmt(" on %g cores", double(cores));
  }
  return detail + fmt("; 1.5x bound not applicable on a %g-core host", double(cores));
}

// ---------------------------------------------------------------- criterion 8

std::string criterion_determinism() {
  const char* scenario_json = R"({
    "width": 160, "height": 120, "background": 40, "noise": 4, "seed": 11,
    "fps": 10, "meters_per_pixel": 0.01,
    "objects": [
      {"shape": "square", "size": [30], "fill": 220, "trajectory": "linear",
       "start": [40, 60], "velocity": [2, 0]}
    ]
  })";

  for (const std::string approach : {"edge", "background"}) {
    TempDir dir("acceptance");
    {
      std::ofstream f(dir.str("scenario.json"));
      f << scenario_json;
    }
    std::ostringstream sink, err;
    require(dispatch({"synth", "--scenario", dir.str("scenario.json"), "--frames", "40", "--out",
                      dir.str("seq")},
                     sink, err) == 0,
            "synth failed: " + err.str());

    std::string jsonl[2], table[2];
    for (int round = 0; round < 2; ++round) {
      const std::string out_dir = dir.str("out" + std::to_string(round));
      std::ostringstream run_out, run_err;
      require(dispatch({"run", "--approach", approach, "--input", dir.str("seq"), "--out",
                        out_dir},
                       run_out, run_err) == 0,
              "run failed: " + run_err.str());
      std::ifstream in(out_dir + "/results.jsonl", std::ios::binary);
      std::ostringstream bytes;
      bytes << in.rdbuf();
      jsonl[round] = bytes.str();

      std::ostringstream eval_out, eval_err;
      require(dispatch({"eval", "--pred", out_dir + "/results.jsonl", "--truth",
                        dir.str("seq/truth.json")},
                       eval_out, eval_err) == 0,
              "eval failed: " + eval_err.str());
      table[round] = eval_out.str();
    }
    require(!jsonl[0].empty(), "first run produced no output");
    require(jsonl[0] == jsonl[1], "results.jsonl differs between identical runs (" + approach + ")");
    require(table[0] == table[1], "metric tables differ between identical runs (" + approach + ")");
  }
  return "synth -> run -> eval twice per approach: byte-identical JSONL and tables";
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<std::string()> fn;
  };
  const Criterion criteria[] = {
      {1, "background model equals the brute-force mean", criterion_background_mean},
      {2, "adaptive threshold and segmentation properties", criterion_threshold_properties},
      {3, "Canny edge suite", criterion_canny},
      {4, "shape classification corpus", criterion_shape_corpus},
      {5, "metric reproduction and moving-object scores", criterion_metrics_and_moving_object},
      {6, "SAD and speed estimation", criterion_sad_and_speed},
      {7, "sequential/parallel equivalence and throughput", criterion_parallel},
      {8, "end-to-end determinism", criterion_determinism},
  };

  int failures = 0;
  for (const Criterion& c : criteria) {
    try {
      const std::string detail = c.fn();
      std::printf("[PASS] criterion %d: %s — %s\n", c.id, c.name, detail.c_str());
    } catch (const std::exception& e) {
      ++failures;
      std::printf("[FAIL] criterion %d: %s — %s\n", c.id, c.name, e.what());
    }
    std::fflush(stdout);
  }
  if (failures > 0) std::printf("%d criterion(s) failed\n", failures);
  return failures;
}
