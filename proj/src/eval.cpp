#include "shapemotion/eval.hpp"

#include <algorithm>
#include <cstdio>
#include <stdexcept>

namespace shapemotion {

EvalCounts match_detections(const std::vector<ShapeDetection>& detections,
                            const GroundTruthFrame& truth, double iou_threshold) {
  if (!(iou_threshold > 0.0) || iou_threshold > 1.0) {
    throw std::invalid_argument("match_detections: iou_threshold must be in (0, 1]");
  }
  struct Pair {
    double overlap;
    std::size_t det;
    std::size_t tru;
  };
  std::vector<Pair> pairs;
  for (std::size_t d = 0; d < detections.size(); ++d) {
    for (std::size_t t = 0; t < truth.objects.size(); ++t) {
      if (detections[d].label != truth.objects[t].label) continue;
      const double o = iou(detections[d].bbox, truth.objects[t].bbox);
      if (o >= iou_threshold) pairs.push_back({o, d, t});
    }
  }
  std::sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) {
    if (a.overlap != b.overlap) return a.overlap > b.overlap;
    if (a.det != b.det) return a.det < b.det;
    return a.tru < b.tru;
  });

  std::vector<char> det_used(detections.size(), 0);
  std::vector<char> tru_used(truth.objects.size(), 0);
  EvalCounts counts;
  for (const Pair& p : pairs) {
    if (det_used[p.det] || tru_used[p.tru]) continue;
    det_used[p.det] = 1;
    tru_used[p.tru] = 1;
    ++counts.tp;
  }
  counts.fp = static_cast<long>(detections.size()) - counts.tp;
  counts.fn = static_cast<long>(truth.objects.size()) - counts.tp;
  return counts;
}

Metrics compute_metrics(const EvalCounts& c) {
  Metrics m;
  if (c.tp + c.fn > 0) {
    m.recall = static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fn);
  } else {
    m.recall = c.fp == 0 ? 1.0 : 0.0;  // no truth objects: vacuous unless spurious detections exist
  }
  if (c.tp + c.fp > 0) {
    m.precision = static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fp);
  } else {
    m.precision = c.fn == 0 ? 1.0 : 0.0;
  }
  m.f1 = (m.precision + m.recall) > 0.0
             ? 2.0 * m.precision * m.recall / (m.precision + m.recall)
             : 0.0;
  return m;
}

std::string format_metrics_table(const std::vector<EvalRow>& rows) {
  std::string out;
  char line[256];
  std::snprintf(line, sizeof(line), "%-24s %6s %6s %6s %6s %6s %6s\n", "Scene", "TP", "FP", "FN",
                "R", "P", "F1");
  out += line;
  for (const EvalRow& r : rows) {
    std::snprintf(line, sizeof(line), "%-24s %6ld %6ld %6ld %6.2f %6.2f %6.2f\n", r.scene.c_str(),
                  r.counts.tp, r.counts.fp, r.counts.fn, r.metrics.recall, r.metrics.precision,
                  r.metrics.f1);
    out += line;
  }
  return out;
}

}  // namespace shapemotion
