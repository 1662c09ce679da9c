#include "shapemotion/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include "CLI11.hpp"

#include "shapemotion/eval.hpp"
#include "shapemotion/imgio.hpp"
#include "shapemotion/pipeline.hpp"
#include "shapemotion/synth.hpp"

namespace fs = std::filesystem;

namespace shapemotion {

namespace {

std::vector<fs::path> list_frames(const std::string& dir) {
  if (!fs::is_directory(dir)) throw std::runtime_error(dir + ": not a directory");
  std::vector<fs::path> paths;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    const std::string ext = entry.path().extension().string();
    if (ext == ".pgm" || ext == ".ppm") paths.push_back(entry.path());
  }
  std::sort(paths.begin(), paths.end(),
            [](const fs::path& a, const fs::path& b) { return a.filename() < b.filename(); });
  if (paths.empty()) throw std::runtime_error(dir + ": no .pgm/.ppm frames found");
  return paths;
}

GrayFrame load_indexed(const fs::path& path, int index, double fps) {
  GrayFrame frame = load_gray(path.string());
  frame.index = index;
  frame.timestamp = fps > 0.0 ? index / fps : 0.0;
  return frame;
}

std::vector<GrayFrame> load_all_frames(const std::string& dir, double fps) {
  std::vector<GrayFrame> frames;
  int index = 0;
  for (const fs::path& p : list_frames(dir)) frames.push_back(load_indexed(p, index++, fps));
  return frames;
}

int cmd_run(const std::string& input_dir, const std::string& out_dir,
            const PipelineConfig& config, bool save_masks, std::ostream& out) {
  const std::vector<fs::path> paths = list_frames(input_dir);
  fs::create_directories(out_dir);
  std::ofstream jsonl(fs::path(out_dir) / "results.jsonl");
  if (!jsonl) throw std::runtime_error(out_dir + ": cannot write results.jsonl");

  std::size_t next = 0;
  long written = 0;
  int canvas_w = 0, canvas_h = 0;  // set before the first sink call runs
  run_stream(
      [&]() -> std::optional<GrayFrame> {
        if (next >= paths.size()) return std::nullopt;
        const std::size_t i = next++;
        GrayFrame frame = load_indexed(paths[i], static_cast<int>(i), config.fps);
        if (canvas_w == 0) {
          canvas_w = frame.width;
          canvas_h = frame.height;
        }
        return frame;
      },
      config,
      [&](const FrameResult& r) {
        jsonl << to_jsonl_line(r) << '\n';
        ++written;
        if (save_masks) {
          char name[32];
          std::snprintf(name, sizeof(name), "mask_%06d.pgm", r.frame_index);
          save_mask(render_objects_image(r.detections, canvas_w, canvas_h),
                    (fs::path(out_dir) / name).string());
        }
      });
  jsonl.close();
  out << "processed " << written << " frames -> " << (fs::path(out_dir) / "results.jsonl").string()
      << "\n";
  return 0;
}

int cmd_synth(const std::string& scenario_path, int frame_count, const std::string& out_dir,
              std::ostream& out) {
  const Scenario scenario = load_scenario(scenario_path);
  const SynthResult result = generate_sequence(scenario, frame_count);
  fs::create_directories(out_dir);
  for (const GrayFrame& frame : result.frames) {
    char name[32];
    std::snprintf(name, sizeof(name), "frame_%06d.pgm", frame.index);
    save_gray(frame, (fs::path(out_dir) / name).string());
  }
  std::ofstream truth(fs::path(out_dir) / "truth.json");
  if (!truth) throw std::runtime_error(out_dir + ": cannot write truth.json");
  truth << truth_to_json(result.truth) << '\n';
  out << "wrote " << result.frames.size() << " frames + truth.json -> " << out_dir << "\n";
  return 0;
}

int cmd_eval(const std::string& pred_path, const std::string& truth_path, double iou_threshold,
             std::ostream& out) {
  std::ifstream pred_in(pred_path);
  if (!pred_in) throw std::runtime_error(pred_path + ": cannot open predictions");
  std::map<int, std::vector<ShapeDetection>> predictions;
  std::string line;
  while (std::getline(pred_in, line)) {
    if (line.empty()) continue;
    PredictedFrame pf = predicted_frame_from_jsonl(line);
    predictions[pf.index] = std::move(pf.detections);
  }

  std::ifstream truth_in(truth_path);
  if (!truth_in) throw std::runtime_error(truth_path + ": cannot open truth");
  std::ostringstream buf;
  buf << truth_in.rdbuf();
  const std::vector<GroundTruthFrame> truth = truth_from_json(buf.str());

  std::map<int, const GroundTruthFrame*> truth_by_index;
  for (const GroundTruthFrame& tf : truth) truth_by_index[tf.index] = &tf;

  EvalCounts totals;
  static const std::vector<ShapeDetection> no_detections;
  for (const auto& [index, tf] : truth_by_index) {
    const auto it = predictions.find(index);
    totals += match_detections(it == predictions.end() ? no_detections : it->second, *tf,
                               iou_threshold);
  }
  for (const auto& [index, dets] : predictions) {
    if (truth_by_index.count(index)) continue;
    GroundTruthFrame empty;
    empty.index = index;
    totals += match_detections(dets, empty, iou_threshold);
  }

  EvalRow row;
  row.scene = fs::path(truth_path).stem().string();
  row.counts = totals;
  row.metrics = compute_metrics(totals);
  out << format_metrics_table({row});
  return 0;
}

int cmd_bench(const std::string& input_dir, const std::string& mode, int workers,
              PipelineConfig config, std::ostream& out) {
  if (workers > 0) config.workers = workers;
  const std::vector<GrayFrame> frames = load_all_frames(input_dir, config.fps);
  std::optional<std::vector<StageTiming>> seq;
  std::optional<std::vector<StageTiming>> par;
  if (mode == "seq" || mode == "both") seq = run_benchmark(frames, config, ExecMode::Sequential);
  if (mode == "par" || mode == "both") par = run_benchmark(frames, config, ExecMode::Parallel);
  out << format_benchmark_table(seq ? &*seq : nullptr, par ? &*par : nullptr);
  return 0;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"moving geometric-shape detection pipelines"};
  app.name("shapemotion");
  app.require_subcommand(1);

  // run
  auto* run = app.add_subcommand("run", "process a directory of frames");
  std::string run_approach;
  std::string run_input, run_out, run_config;
  bool run_save_masks = false;
  run->add_option("--approach", run_approach, "background|edge");
  run->add_option("--input", run_input, "directory of numbered .pgm/.ppm frames")->required();
  run->add_option("--out", run_out, "output directory for results.jsonl")->required();
  run->add_option("--config", run_config, "key=value config file");
  run->add_flag("--save-masks", run_save_masks, "write rendered object masks per frame");

  // synth
  auto* synth = app.add_subcommand("synth", "generate a synthetic sequence");
  std::string synth_scenario, synth_out;
  int synth_frames = 0;
  synth->add_option("--scenario", synth_scenario, "scenario JSON file")->required();
  synth->add_option("--frames", synth_frames, "number of frames")->required()
      ->check(CLI::PositiveNumber);
  synth->add_option("--out", synth_out, "output directory")->required();

  // eval
  auto* eval = app.add_subcommand("eval", "score predictions against ground truth");
  std::string eval_pred, eval_truth;
  double eval_iou = 0.5;
  eval->add_option("--pred", eval_pred, "results.jsonl from run")->required();
  eval->add_option("--truth", eval_truth, "truth.json from synth")->required();
  eval->add_option("--iou", eval_iou, "IoU threshold (default 0.5)");

  // bench
  auto* bench = app.add_subcommand("bench", "time the pipeline stages");
  std::string bench_input, bench_mode = "both", bench_config;
  int bench_workers = 0;
  bench->add_option("--input", bench_input, "directory of frames")->required();
  bench->add_option("--mode", bench_mode, "seq|par|both (default both)")
      ->check(CLI::IsMember({"seq", "par", "both"}));
  bench->add_option("--workers", bench_workers, "parallel worker count");
  bench->add_option("--config", bench_config, "key=value config file");

  std::vector<const char*> argv;
  argv.push_back("shapemotion");
  for (const std::string& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << e.what() << "\n\n" << app.help();
    return 2;
  }

  try {
    if (run->parsed()) {
      PipelineConfig config;
      if (!run_config.empty()) config = load_config(run_config, config);
      if (!run_approach.empty()) config.approach = approach_from_string(run_approach);
      return cmd_run(run_input, run_out, config, run_save_masks, out);
    }
    if (synth->parsed()) return cmd_synth(synth_scenario, synth_frames, synth_out, out);
    if (eval->parsed()) return cmd_eval(eval_pred, eval_truth, eval_iou, out);
    if (bench->parsed()) {
      PipelineConfig config;
      if (!bench_config.empty()) config = load_config(bench_config, config);
      return cmd_bench(bench_input, bench_mode, bench_workers, config, out);
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  err << "error: no subcommand\n";
  return 2;
}

}  // namespace shapemotion
