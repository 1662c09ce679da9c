#include "shapemotion/motion.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace shapemotion {

namespace {

double sad_impl(const std::uint8_t* a, const std::uint8_t* b, int w, int h,
                const ExecPolicy& exec) {
  const double total = sum_rows(exec, h, [&](int y) {
    const std::size_t row = static_cast<std::size_t>(y) * w;
    double acc = 0.0;
    for (int x = 0; x < w; ++x) {
      acc += std::abs(static_cast<double>(a[row + x]) - static_cast<double>(b[row + x]));
    }
    return acc;
  });
  return total / (static_cast<double>(w) * h);
}

}  // namespace

double sad_distance(const GrayFrame& a, const GrayFrame& b, const ExecPolicy& exec) {
  require_same_size(a.width, a.height, b.width, b.height, "sad_distance");
  return sad_impl(a.pixels.data(), b.pixels.data(), a.width, a.height, exec);
}

double sad_distance(const BinaryMask& a, const BinaryMask& b, const ExecPolicy& exec) {
  require_same_size(a.width, a.height, b.width, b.height, "sad_distance");
  return sad_impl(a.pixels.data(), b.pixels.data(), a.width, a.height, exec);
}

bool motion_decision(double sad, double threshold) {
  if (threshold < 0.0) throw std::invalid_argument("motion_decision: threshold must be >= 0");
  return sad > threshold;
}

double estimate_speed(const TrackedObject& prev, const TrackedObject& cur,
                      double meters_per_pixel) {
  if (meters_per_pixel <= 0.0) {
    throw std::invalid_argument("estimate_speed: meters_per_pixel must be > 0");
  }
  if (!(cur.timestamp > prev.timestamp)) {
    throw std::invalid_argument("estimate_speed: timestamps must be increasing");
  }
  return meters_per_pixel * distance(prev.centroid, cur.centroid) /
         (cur.timestamp - prev.timestamp);
}

std::vector<TrackedObject> associate(const std::vector<TrackedObject>& prev,
                                     const std::vector<ShapeDetection>& cur,
                                     double cur_timestamp, double max_jump,
                                     double meters_per_pixel) {
  struct Candidate {
    double dist;
    std::size_t cur_idx;
    std::size_t prev_idx;
  };
  std::vector<Candidate> candidates;
  for (std::size_t j = 0; j < cur.size(); ++j) {
    for (std::size_t i = 0; i < prev.size(); ++i) {
      if (prev[i].label != cur[j].label) continue;
      const double d = distance(prev[i].centroid, cur[j].metrics.centroid);
      if (d <= max_jump) candidates.push_back({d, j, i});
    }
  }
  std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
    if (a.dist != b.dist) return a.dist < b.dist;
    if (a.cur_idx != b.cur_idx) return a.cur_idx < b.cur_idx;
    return a.prev_idx < b.prev_idx;
  });

  std::vector<std::optional<std::size_t>> match(cur.size());
  std::vector<char> prev_used(prev.size(), 0);
  for (const Candidate& c : candidates) {
    if (match[c.cur_idx] || prev_used[c.prev_idx]) continue;
    match[c.cur_idx] = c.prev_idx;
    prev_used[c.prev_idx] = 1;
  }

  std::vector<TrackedObject> tracks;
  tracks.reserve(cur.size());
  for (std::size_t j = 0; j < cur.size(); ++j) {
    TrackedObject t;
    t.centroid = cur[j].metrics.centroid;
    t.timestamp = cur_timestamp;
    t.label = cur[j].label;
    if (match[j] && cur_timestamp > prev[*match[j]].timestamp) {
      t.speed_mps = estimate_speed(prev[*match[j]], t, meters_per_pixel);
    }
    tracks.push_back(t);
  }
  return tracks;
}

}  // namespace shapemotion
