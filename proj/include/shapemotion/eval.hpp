#pragma once

#include <string>
#include <vector>

#include "shapemotion/geometry.hpp"
#include "shapemotion/shapes.hpp"

namespace shapemotion {

struct GroundTruthObject {
  ShapeLabel label = ShapeLabel::Circle;
  PointD centroid;
  BBox bbox;
  double area = 0.0;
};

struct GroundTruthFrame {
  int index = 0;
  std::vector<GroundTruthObject> objects;
};

struct EvalCounts {
  long tp = 0;
  long fp = 0;
  long fn = 0;

  EvalCounts& operator+=(const EvalCounts& o) {
    tp += o.tp;
    fp += o.fp;
    fn += o.fn;
    return *this;
  }
};

struct Metrics {
  double recall = 0.0;
  double precision = 0.0;
  double f1 = 0.0;
};

/// Greedy pairing by descending bounding-box IoU, restricted to matching
/// labels and IoU >= iou_threshold. Unpaired detections count as FP,
/// unpaired truth objects as FN; a right-box wrong-label detection is an FP
/// and leaves the truth object unmatched.
EvalCounts match_detections(const std::vector<ShapeDetection>& detections,
                            const GroundTruthFrame& truth, double iou_threshold = 0.5);

/// recall = tp/(tp+fn), precision = tp/(tp+fp), f1 = 2pr/(p+r).
/// An empty scene with no detections is vacuously perfect (all 1); a 0/0
/// ratio with activity on the other side resolves to 0.
Metrics compute_metrics(const EvalCounts& counts);

struct EvalRow {
  std::string scene;
  EvalCounts counts;
  Metrics metrics;
};

/// Plain-text table with columns Scene, TP, FP, FN, R, P, F1.
std::string format_metrics_table(const std::vector<EvalRow>& rows);

}  // namespace shapemotion
