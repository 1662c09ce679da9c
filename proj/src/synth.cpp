#include "shapemotion/synth.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace shapemotion {

namespace {

// Deterministic noise stream, independent of the standard library's
// distribution implementations.
struct SplitMix64 {
  std::uint64_t state;
  explicit SplitMix64(std::uint64_t s) : state(s) {}
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }
  // Unbiased value in [0, bound) by rejection.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t v = next();
    while (v >= limit) v = next();
    return v % bound;
  }
};

struct Footprint {
  PointD centroid;
  BBox bbox;
  double area = 0.0;
};

double size_param(const ObjectSpec& obj, std::size_t i) {
  if (obj.size.empty()) throw std::invalid_argument("object has no size parameters");
  return obj.size[std::min(i, obj.size.size() - 1)];
}

// Analytic centroid/bbox/area for the object centered at c. Rectangles at
// zero rotation snap to half-open integer ranges so the raster is exact.
Footprint object_footprint(const ObjectSpec& obj, const PointD& c) {
  Footprint fp;
  const bool round_shape = obj.shape == ShapeLabel::Circle || obj.shape == ShapeLabel::Ellipse;
  if (round_shape) {
    const double rx = size_param(obj, 0);
    const double ry = obj.shape == ShapeLabel::Circle ? rx : size_param(obj, 1);
    const double cs = std::cos(obj.rotation);
    const double sn = std::sin(obj.rotation);
    const double ex = std::sqrt(rx * cs * rx * cs + ry * sn * ry * sn);
    const double ey = std::sqrt(rx * sn * rx * sn + ry * cs * ry * cs);
    fp.centroid = c;
    fp.area = std::numbers::pi * rx * ry;
    fp.bbox = {static_cast<int>(std::ceil(c.x - ex)), static_cast<int>(std::ceil(c.y - ey)),
               static_cast<int>(std::floor(c.x + ex)), static_cast<int>(std::floor(c.y + ey))};
    return fp;
  }

  const double w = size_param(obj, 0);
  const double h = obj.shape == ShapeLabel::Square ? w : size_param(obj, 1);
  if (obj.rotation == 0.0) {
    const int wi = static_cast<int>(std::lround(w));
    const int hi = static_cast<int>(std::lround(h));
    const int x0 = static_cast<int>(std::lround(c.x - w / 2.0));
    const int y0 = static_cast<int>(std::lround(c.y - h / 2.0));
    fp.bbox = {x0, y0, x0 + wi - 1, y0 + hi - 1};
    fp.centroid = {x0 + (wi - 1) / 2.0, y0 + (hi - 1) / 2.0};
    fp.area = static_cast<double>(wi) * hi;
    return fp;
  }
  const double cs = std::abs(std::cos(obj.rotation));
  const double sn = std::abs(std::sin(obj.rotation));
  const double ex = (w / 2.0) * cs + (h / 2.0) * sn;
  const double ey = (w / 2.0) * sn + (h / 2.0) * cs;
  fp.centroid = c;
  fp.area = w * h;
  fp.bbox = {static_cast<int>(std::ceil(c.x - ex)), static_cast<int>(std::ceil(c.y - ey)),
             static_cast<int>(std::floor(c.x + ex)), static_cast<int>(std::floor(c.y + ey))};
  return fp;
}

bool inside_object(const ObjectSpec& obj, const PointD& c, const Footprint& fp, int x, int y) {
  const bool round_shape = obj.shape == ShapeLabel::Circle || obj.shape == ShapeLabel::Ellipse;
  if (!round_shape && obj.rotation == 0.0) {
    return x >= fp.bbox.x0 && x <= fp.bbox.x1 && y >= fp.bbox.y0 && y <= fp.bbox.y1;
  }
  double ux = x - c.x;
  double uy = y - c.y;
  if (obj.rotation != 0.0) {
    const double cs = std::cos(-obj.rotation);
    const double sn = std::sin(-obj.rotation);
    const double rx2 = ux * cs - uy * sn;
    uy = ux * sn + uy * cs;
    ux = rx2;
  }
  if (round_shape) {
    const double rx = size_param(obj, 0);
    const double ry = obj.shape == ShapeLabel::Circle ? rx : size_param(obj, 1);
    const double nx = ux / rx;
    const double ny = uy / ry;
    return nx * nx + ny * ny <= 1.0;
  }
  const double w = size_param(obj, 0);
  const double h = obj.shape == ShapeLabel::Square ? w : size_param(obj, 1);
  return std::abs(ux) <= w / 2.0 && std::abs(uy) <= h / 2.0;
}

void validate(const Scenario& sc) {
  if (sc.width < 1 || sc.height < 1) throw std::invalid_argument("scenario: bad canvas size");
  if (sc.noise_amplitude < 0) throw std::invalid_argument("scenario: negative noise amplitude");
  for (const ObjectSpec& obj : sc.objects) {
    for (double s : obj.size) {
      if (s <= 2.0) throw std::invalid_argument("scenario: degenerate object size (<= 2 px)");
    }
    if (obj.size.empty()) throw std::invalid_argument("scenario: object has no size");
    if (const auto* circ = std::get_if<CircularPath>(&obj.path)) {
      if (circ->radius <= 0.0) throw std::invalid_argument("scenario: circular path radius <= 0");
      if (circ->displacement < 0.0) throw std::invalid_argument("scenario: negative displacement");
    }
  }
}

}  // namespace

PointD trajectory_position(const Trajectory& path, int frame) {
  if (const auto* lin = std::get_if<LinearPath>(&path)) {
    return {lin->start.x + frame * lin->velocity.x, lin->start.y + frame * lin->velocity.y};
  }
  const auto& circ = std::get<CircularPath>(path);
  const double theta = circ.start_angle + frame * (circ.displacement / circ.radius);
  return {circ.center.x + circ.radius * std::cos(theta),
          circ.center.y + circ.radius * std::sin(theta)};
}

SynthResult generate_sequence(const Scenario& sc, int frame_count) {
  if (frame_count < 1) throw std::invalid_argument("generate_sequence: frame_count must be >= 1");
  validate(sc);

  SynthResult result;
  result.frames.reserve(frame_count);
  result.truth.reserve(frame_count);

  GrayFrame backdrop = GrayFrame::filled(sc.width, sc.height, static_cast<std::uint8_t>(sc.background));
  for (const BackgroundBand& band : sc.background_bands) {
    for (int y = 0; y < sc.height; ++y) {
      for (int x = std::max(0, band.x0); x < sc.width; ++x) {
        backdrop.at(x, y) = static_cast<std::uint8_t>(band.value);
      }
    }
  }

  for (int f = 0; f < frame_count; ++f) {
    GrayFrame frame = backdrop;
    frame.index = f;
    frame.timestamp = sc.fps > 0.0 ? f / sc.fps : 0.0;
    GroundTruthFrame truth;
    truth.index = f;

    for (const ObjectSpec& obj : sc.objects) {
      if (f < obj.first_frame || f > obj.last_frame) continue;
      const PointD c = trajectory_position(obj.path, f);
      const Footprint fp = object_footprint(obj, c);
      if (fp.bbox.x0 < 0 || fp.bbox.y0 < 0 || fp.bbox.x1 >= sc.width || fp.bbox.y1 >= sc.height) {
        std::ostringstream msg;
        msg << "generate_sequence: object leaves canvas at frame " << f;
        throw std::invalid_argument(msg.str());
      }
      for (int y = fp.bbox.y0; y <= fp.bbox.y1; ++y) {
        for (int x = fp.bbox.x0; x <= fp.bbox.x1; ++x) {
          if (inside_object(obj, c, fp, x, y)) {
            frame.at(x, y) = static_cast<std::uint8_t>(obj.fill);
          }
        }
      }
      truth.objects.push_back({obj.shape, fp.centroid, fp.bbox, fp.area});
    }

    if (sc.noise_amplitude > 0) {
      SplitMix64 rng(sc.seed + 0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(f + 1));
      const std::uint64_t span = 2ULL * sc.noise_amplitude + 1;
      for (std::uint8_t& p : frame.pixels) {
        const int noise = static_cast<int>(rng.below(span)) - sc.noise_amplitude;
        const int v = static_cast<int>(p) + noise;
        p = static_cast<std::uint8_t>(v < 0 ? 0 : (v > 255 ? 255 : v));
      }
    }

    result.frames.push_back(std::move(frame));
    result.truth.push_back(std::move(truth));
  }
  return result;
}

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

std::string truth_to_json(const std::vector<GroundTruthFrame>& truth) {
  ordered_json frames = ordered_json::array();
  for (const GroundTruthFrame& tf : truth) {
    ordered_json objects = ordered_json::array();
    for (const GroundTruthObject& o : tf.objects) {
      objects.push_back({{"label", to_string(o.label)},
                         {"centroid", {o.centroid.x, o.centroid.y}},
                         {"bbox", {o.bbox.x0, o.bbox.y0, o.bbox.x1, o.bbox.y1}},
                         {"area", o.area}});
    }
    frames.push_back({{"index", tf.index}, {"objects", std::move(objects)}});
  }
  ordered_json doc;
  doc["frames"] = std::move(frames);
  return doc.dump();
}

std::vector<GroundTruthFrame> truth_from_json(const std::string& text) {
  const json doc = json::parse(text);
  std::vector<GroundTruthFrame> truth;
  for (const json& jf : doc.at("frames")) {
    GroundTruthFrame tf;
    tf.index = jf.at("index").get<int>();
    for (const json& jo : jf.at("objects")) {
      GroundTruthObject o;
      o.label = shape_label_from_string(jo.at("label").get<std::string>());
      o.centroid = {jo.at("centroid")[0].get<double>(), jo.at("centroid")[1].get<double>()};
      o.bbox = {jo.at("bbox")[0].get<int>(), jo.at("bbox")[1].get<int>(),
                jo.at("bbox")[2].get<int>(), jo.at("bbox")[3].get<int>()};
      o.area = jo.value("area", 0.0);
      tf.objects.push_back(o);
    }
    truth.push_back(std::move(tf));
  }
  return truth;
}

Scenario scenario_from_json(const std::string& text) {
  const json doc = json::parse(text);
  Scenario sc;
  sc.width = doc.at("width").get<int>();
  sc.height = doc.at("height").get<int>();
  sc.background = doc.value("background", 0);
  if (doc.contains("background_bands")) {
    for (const json& jb : doc.at("background_bands")) {
      sc.background_bands.push_back({jb.at("x0").get<int>(), jb.at("value").get<int>()});
    }
  }
  sc.noise_amplitude = doc.value("noise", 0);
  sc.seed = doc.value("seed", 0ULL);
  sc.fps = doc.value("fps", 10.0);
  sc.meters_per_pixel = doc.value("meters_per_pixel", 0.01);
  if (doc.contains("objects")) {
    for (const json& jo : doc.at("objects")) {
      ObjectSpec obj;
      obj.shape = shape_label_from_string(jo.at("shape").get<std::string>());
      for (const json& s : jo.at("size")) obj.size.push_back(s.get<double>());
      obj.fill = jo.value("fill", 255);
      obj.rotation = jo.value("rotation", 0.0);
      obj.first_frame = jo.value("first_frame", 0);
      obj.last_frame = jo.value("last_frame", -1);
      if (obj.last_frame < 0) obj.last_frame = INT_MAX;
      const std::string kind = jo.value("trajectory", "linear");
      if (kind == "linear") {
        LinearPath lin;
        lin.start = {jo.at("start")[0].get<double>(), jo.at("start")[1].get<double>()};
        if (jo.contains("velocity")) {
          lin.velocity = {jo.at("velocity")[0].get<double>(), jo.at("velocity")[1].get<double>()};
        }
        obj.path = lin;
      } else if (kind == "circular") {
        CircularPath circ;
        circ.center = {jo.at("path_center")[0].get<double>(), jo.at("path_center")[1].get<double>()};
        circ.radius = jo.at("path_radius").get<double>();
        circ.displacement = jo.value("displacement", 0.0);
        circ.start_angle = jo.value("start_angle", 0.0);
        obj.path = circ;
      } else {
        throw std::invalid_argument("scenario: unknown trajectory '" + kind + "'");
      }
      sc.objects.push_back(std::move(obj));
    }
  }
  return sc;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(path + ": cannot open scenario");
  std::ostringstream buf;
  buf << in.rdbuf();
  return scenario_from_json(buf.str());
}

}  // namespace shapemotion
