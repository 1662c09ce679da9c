#pragma once

#include "shapemotion/exec.hpp"
#include "shapemotion/frame.hpp"

namespace shapemotion {

/// Per-pixel running-mean background estimate. Means are kept in real
/// arithmetic; t counts absorbed frames.
struct BackgroundModel {
  int width = 0;
  int height = 0;
  std::vector<double> mean;
  long t = 0;

  static BackgroundModel sized(int w, int h) {
    BackgroundModel m;
    m.width = w;
    m.height = h;
    m.mean.assign(static_cast<std::size_t>(w) * h, 0.0);
    return m;
  }
};

/// Modified moving average update: mean += (I - mean) / t' with t' = t + 1.
/// With t_max > 0 the effective divisor is capped at t_max, which turns the
/// running mean into an exponential moving average for long streams.
void mma_update(BackgroundModel& model, const GrayFrame& frame,
                const ExecPolicy& exec = {}, long t_max = 0);

/// lambda * mean(|I - B|) over all pixels.
double adaptive_threshold(const GrayFrame& frame, const BackgroundModel& model,
                          double lambda, const ExecPolicy& exec = {});

/// White where |I - B| >= threshold.
BinaryMask foreground_mask(const GrayFrame& frame, const BackgroundModel& model,
                           double threshold, const ExecPolicy& exec = {});

}  // namespace shapemotion
