#include "shapemotion/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace shapemotion {

Approach approach_from_string(const std::string& name) {
  if (name == "background") return Approach::Background;
  if (name == "edge") return Approach::Edge;
  throw std::invalid_argument("unknown approach: " + name + " (expected background|edge)");
}

std::string to_string(Approach approach) {
  return approach == Approach::Background ? "background" : "edge";
}

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return a == std::string::npos ? "" : s.substr(a, b - a + 1);
}

double to_double(const std::string& key, const std::string& value) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(value, &pos);
  } catch (const std::exception&) {
    pos = std::string::npos;
  }
  if (pos != value.size()) throw std::invalid_argument("config: bad number for " + key);
  return v;
}

long to_long(const std::string& key, const std::string& value) {
  std::size_t pos = 0;
  long v = 0;
  try {
    v = std::stol(value, &pos);
  } catch (const std::exception&) {
    pos = std::string::npos;
  }
  if (pos != value.size()) throw std::invalid_argument("config: bad integer for " + key);
  return v;
}

std::vector<MorphOp> parse_morph_list(const std::string& value) {
  std::vector<MorphOp> ops;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    ops.push_back(morph_op_from_string(item));
  }
  return ops;
}

}  // namespace

void apply_config_entry(PipelineConfig& c, const std::string& key, const std::string& value) {
  if (key == "approach") c.approach = approach_from_string(value);
  else if (key == "lambda") c.lambda = to_double(key, value);
  else if (key == "learning_period") c.learning_period = static_cast<int>(to_long(key, value));
  else if (key == "threshold_floor") c.threshold_floor = to_double(key, value);
  else if (key == "t_max") c.t_max = to_long(key, value);
  else if (key == "blur_sigma") c.blur_sigma = to_double(key, value);
  else if (key == "blur_radius") c.blur_radius = static_cast<int>(to_long(key, value));
  else if (key == "canny_low") c.canny_low = to_double(key, value);
  else if (key == "canny_high") c.canny_high = to_double(key, value);
  else if (key == "canny_high_ratio") c.canny_high_ratio = to_double(key, value);
  else if (key == "morphology") c.morphology = parse_morph_list(value);
  else if (key == "morph_iterations") c.morph_iterations = static_cast<int>(to_long(key, value));
  else if (key == "polygon_epsilon") c.polygon_epsilon = to_double(key, value);
  else if (key == "min_area") c.shape.min_area = to_double(key, value);
  else if (key == "corner_cos_max") c.shape.corner_cos_max = to_double(key, value);
  else if (key == "side_ratio_max") c.shape.side_ratio_max = to_double(key, value);
  else if (key == "circle_circularity") c.shape.circle_circularity = to_double(key, value);
  else if (key == "ellipse_circularity") c.shape.ellipse_circularity = to_double(key, value);
  else if (key == "axis_ratio_min") c.shape.axis_ratio_min = to_double(key, value);
  else if (key == "sad_threshold") c.sad_threshold = to_double(key, value);
  else if (key == "max_jump") c.max_jump = to_double(key, value);
  else if (key == "meters_per_pixel") c.meters_per_pixel = to_double(key, value);
  else if (key == "fps") c.fps = to_double(key, value);
  else if (key == "mode") {
    if (value == "sequential" || value == "seq") c.mode = ExecMode::Sequential;
    else if (value == "parallel" || value == "par") c.mode = ExecMode::Parallel;
    else throw std::invalid_argument("config: bad mode '" + value + "'");
  }
  else if (key == "workers") c.workers = static_cast<int>(to_long(key, value));
  else throw std::invalid_argument("config: unknown key '" + key + "'");
}

PipelineConfig apply_config_text(PipelineConfig base, const std::string& text) {
  std::stringstream ss(text);
  std::string line;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config line " + std::to_string(lineno) + ": expected key=value");
    }
    apply_config_entry(base, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return base;
}

PipelineConfig load_config(const std::string& path, PipelineConfig base) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(path + ": cannot open config");
  std::ostringstream buf;
  buf << in.rdbuf();
  return apply_config_text(base, buf.str());
}

}  // namespace shapemotion
