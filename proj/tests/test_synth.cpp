#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "shapemotion/synth.hpp"
#include "test_helpers.hpp"

using namespace shapemotion;

namespace {

ObjectSpec square_object(double side, int fill, PointD start, PointD velocity) {
  ObjectSpec o;
  o.shape = ShapeLabel::Square;
  o.size = {side};
  o.fill = fill;
  o.path = LinearPath{start, velocity};
  return o;
}

Scenario base_scenario(int w, int h) {
  Scenario sc;
  sc.width = w;
  sc.height = h;
  sc.background = 40;
  sc.seed = 7;
  return sc;
}

}  // namespace

TEST_SUITE("synth") {

TEST_CASE("an empty noiseless scenario renders identical constant frames") {
  const Scenario sc = base_scenario(32, 24);
  const SynthResult r = generate_sequence(sc, 5);
  REQUIRE(r.frames.size() == 5);
  REQUIRE(r.truth.size() == 5);
  for (const GroundTruthFrame& tf : r.truth) CHECK(tf.objects.empty());
  for (const GrayFrame& f : r.frames) {
    CHECK(f.pixels == r.frames[0].pixels);
    for (std::uint8_t p : f.pixels) CHECK(p == 40);
  }
}

TEST_CASE("truth centroids of a 3 px/frame square differ by exactly (3, 0)") {
  Scenario sc = base_scenario(128, 64);
  sc.objects = {square_object(20, 200, {30, 30}, {3, 0})};
  const SynthResult r = generate_sequence(sc, 10);
  for (std::size_t f = 1; f < r.truth.size(); ++f) {
    REQUIRE(r.truth[f].objects.size() == 1);
    CHECK(r.truth[f].objects[0].centroid.x - r.truth[f - 1].objects[0].centroid.x == 3.0);
    CHECK(r.truth[f].objects[0].centroid.y == r.truth[f - 1].objects[0].centroid.y);
  }
}

TEST_CASE("a fixed seed reproduces bit-identical frames") {
  Scenario sc = base_scenario(64, 48);
  sc.noise_amplitude = 8;
  sc.objects = {square_object(12, 220, {20, 20}, {1, 1})};
  const SynthResult a = generate_sequence(sc, 8);
  const SynthResult b = generate_sequence(sc, 8);
  REQUIRE(a.frames.size() == b.frames.size());
  for (std::size_t i = 0; i < a.frames.size(); ++i) {
    CHECK(a.frames[i].pixels == b.frames[i].pixels);
  }
}

TEST_CASE("different seeds change the noise") {
  Scenario sc = base_scenario(64, 48);
  sc.noise_amplitude = 8;
  Scenario sc2 = sc;
  sc2.seed = 8;
  CHECK(generate_sequence(sc, 1).frames[0].pixels != generate_sequence(sc2, 1).frames[0].pixels);
}

TEST_CASE("truth bounding boxes contain every lit pixel") {
  Scenario sc = base_scenario(128, 96);
  sc.objects = {square_object(21, 220, {40, 40}, {0.7, 0.3})};
  ObjectSpec disk;
  disk.shape = ShapeLabel::Circle;
  disk.size = {15};
  disk.fill = 200;
  disk.path = LinearPath{{90, 50}, {-0.5, 0.25}};
  sc.objects.push_back(disk);
  const SynthResult r = generate_sequence(sc, 12);
  for (std::size_t f = 0; f < r.frames.size(); ++f) {
    const GrayFrame& frame = r.frames[f];
    for (int y = 0; y < frame.height; ++y) {
      for (int x = 0; x < frame.width; ++x) {
        if (frame.at(x, y) == 40) continue;  // background
        bool inside_some = false;
        for (const GroundTruthObject& o : r.truth[f].objects) {
          inside_some = inside_some || (x >= o.bbox.x0 && x <= o.bbox.x1 && y >= o.bbox.y0 &&
                                        y <= o.bbox.y1);
        }
        CHECK(inside_some);
      }
    }
  }
}

TEST_CASE("lit pixel count stays within 5 percent of the analytic area") {
  Scenario sc = base_scenario(256, 128);
  sc.objects = {square_object(30, 220, {40, 60}, {0, 0})};
  ObjectSpec disk;
  disk.shape = ShapeLabel::Circle;
  disk.size = {20};
  disk.fill = 220;
  disk.path = LinearPath{{120, 60}, {0, 0}};
  sc.objects.push_back(disk);
  ObjectSpec ell;
  ell.shape = ShapeLabel::Ellipse;
  ell.size = {30, 15};
  ell.fill = 220;
  ell.path = LinearPath{{200, 60}, {0, 0}};
  sc.objects.push_back(ell);
  const SynthResult r = generate_sequence(sc, 1);
  REQUIRE(r.truth[0].objects.size() == 3);
  for (const GroundTruthObject& o : r.truth[0].objects) {
    long lit = 0;
    for (int y = o.bbox.y0; y <= o.bbox.y1; ++y) {
      for (int x = o.bbox.x0; x <= o.bbox.x1; ++x) {
        if (r.frames[0].at(x, y) == 220) ++lit;
      }
    }
    CHECK(std::abs(double(lit) - o.area) <= 0.05 * o.area);
  }
}

TEST_CASE("objects that leave the canvas are an error") {
  Scenario sc = base_scenario(64, 64);
  sc.objects = {square_object(20, 200, {50, 30}, {3, 0})};
  CHECK_THROWS(generate_sequence(sc, 10));
}

TEST_CASE("degenerate sizes are rejected") {
  Scenario sc = base_scenario(64, 64);
  sc.objects = {square_object(2, 200, {30, 30}, {0, 0})};
  CHECK_THROWS(generate_sequence(sc, 1));
}

TEST_CASE("circular trajectories orbit the path center") {
  CircularPath orbit;
  orbit.center = {50, 50};
  orbit.radius = 20;
  orbit.displacement = 2.0;
  const PointD p0 = trajectory_position(orbit, 0);
  CHECK(p0.x == doctest::Approx(70.0));
  CHECK(p0.y == doctest::Approx(50.0));
  for (int f : {1, 5, 31}) {
    const PointD p = trajectory_position(orbit, f);
    CHECK(std::hypot(p.x - 50, p.y - 50) == doctest::Approx(20.0).epsilon(1e-9));
  }
  // arc length between consecutive frames ~ displacement
  const PointD a = trajectory_position(orbit, 3);
  const PointD b = trajectory_position(orbit, 4);
  CHECK(std::hypot(a.x - b.x, a.y - b.y) == doctest::Approx(2.0).epsilon(0.01));
}

TEST_CASE("visibility windows gate rendering and truth") {
  Scenario sc = base_scenario(64, 64);
  ObjectSpec o = square_object(12, 200, {30, 30}, {0, 0});
  o.first_frame = 3;
  o.last_frame = 5;
  sc.objects = {o};
  const SynthResult r = generate_sequence(sc, 8);
  for (int f = 0; f < 8; ++f) {
    const bool visible = f >= 3 && f <= 5;
    CHECK(r.truth[f].objects.size() == (visible ? 1 : 0));
    bool any_lit = false;
    for (std::uint8_t p : r.frames[f].pixels) any_lit = any_lit || p != 40;
    CHECK(any_lit == visible);
  }
}

TEST_CASE("frame timestamps follow the configured fps") {
  Scenario sc = base_scenario(16, 16);
  sc.fps = 25.0;
  const SynthResult r = generate_sequence(sc, 3);
  CHECK(r.frames[1].timestamp == doctest::Approx(1.0 / 25.0));
  CHECK(r.frames[2].timestamp == doctest::Approx(2.0 / 25.0));
  CHECK(r.frames[2].index == 2);
}

TEST_CASE("background bands override columns") {
  Scenario sc = base_scenario(32, 8);
  sc.background_bands = {{16, 90}};
  const SynthResult r = generate_sequence(sc, 1);
  CHECK(r.frames[0].at(0, 4) == 40);
  CHECK(r.frames[0].at(15, 4) == 40);
  CHECK(r.frames[0].at(16, 4) == 90);
  CHECK(r.frames[0].at(31, 4) == 90);
}

TEST_CASE("truth JSON round-trips") {
  Scenario sc = base_scenario(96, 64);
  sc.objects = {square_object(14, 220, {30, 30}, {2, 1})};
  const SynthResult r = generate_sequence(sc, 4);
  const auto back = truth_from_json(truth_to_json(r.truth));
  REQUIRE(back.size() == r.truth.size());
  for (std::size_t f = 0; f < back.size(); ++f) {
    CHECK(back[f].index == r.truth[f].index);
    REQUIRE(back[f].objects.size() == r.truth[f].objects.size());
    for (std::size_t i = 0; i < back[f].objects.size(); ++i) {
      CHECK(back[f].objects[i].label == r.truth[f].objects[i].label);
      CHECK(back[f].objects[i].bbox == r.truth[f].objects[i].bbox);
      CHECK(back[f].objects[i].centroid.x ==
            doctest::Approx(r.truth[f].objects[i].centroid.x));
      CHECK(back[f].objects[i].area == doctest::Approx(r.truth[f].objects[i].area));
    }
  }
}

TEST_CASE("scenario JSON parses every field") {
  const std::string text = R"({
    "width": 320, "height": 240, "background": 40, "noise": 5, "seed": 99,
    "fps": 12.5, "meters_per_pixel": 0.02,
    "background_bands": [{"x0": 160, "value": 80}],
    "objects": [
      {"shape": "square", "size": [24], "fill": 220, "trajectory": "linear",
       "start": [40, 60], "velocity": [3, 0], "first_frame": 2, "last_frame": 30},
      {"shape": "ellipse", "size": [30, 15], "fill": 180, "trajectory": "circular",
       "path_center": [200, 120], "path_radius": 40, "displacement": 2.5}
    ]
  })";
  const Scenario sc = scenario_from_json(text);
  CHECK(sc.width == 320);
  CHECK(sc.height == 240);
  CHECK(sc.noise_amplitude == 5);
  CHECK(sc.seed == 99);
  CHECK(sc.fps == 12.5);
  CHECK(sc.meters_per_pixel == 0.02);
  REQUIRE(sc.background_bands.size() == 1);
  REQUIRE(sc.objects.size() == 2);
  CHECK(sc.objects[0].shape == ShapeLabel::Square);
  CHECK(sc.objects[0].first_frame == 2);
  CHECK(std::holds_alternative<LinearPath>(sc.objects[0].path));
  CHECK(std::holds_alternative<CircularPath>(sc.objects[1].path));
  CHECK_THROWS(scenario_from_json(R"({"width": 8})"));
  CHECK_THROWS(scenario_from_json(
      R"({"width": 8, "height": 8, "objects": [{"shape": "square", "size": [4],
          "trajectory": "spiral", "start": [2, 2]}]})"));
}

}  // TEST_SUITE
