#include "shapemotion/background.hpp"

#include <cmath>
#include <stdexcept>

namespace shapemotion {

void mma_update(BackgroundModel& model, const GrayFrame& frame, const ExecPolicy& exec,
                long t_max) {
  require_same_size(model.width, model.height, frame.width, frame.height, "mma_update");
  const long t_next = model.t + 1;
  const long divisor = (t_max > 0 && t_next > t_max) ? t_max : t_next;
  const double inv = 1.0 / static_cast<double>(divisor);
  const int w = model.width;
  for_rows(exec, model.height, [&](int y) {
    const std::size_t row = static_cast<std::size_t>(y) * w;
    for (int x = 0; x < w; ++x) {
      const double diff = static_cast<double>(frame.pixels[row + x]) - model.mean[row + x];
      model.mean[row + x] += inv * diff;
    }
  });
  model.t = t_next;
}

double adaptive_threshold(const GrayFrame& frame, const BackgroundModel& model,
                          double lambda, const ExecPolicy& exec) {
  if (lambda <= 0.0) throw std::invalid_argument("adaptive_threshold: lambda must be > 0");
  require_same_size(model.width, model.height, frame.width, frame.height, "adaptive_threshold");
  const int w = model.width;
  const double total = sum_rows(exec, model.height, [&](int y) {
    const std::size_t row = static_cast<std::size_t>(y) * w;
    double acc = 0.0;
    for (int x = 0; x < w; ++x) {
      acc += std::abs(static_cast<double>(frame.pixels[row + x]) - model.mean[row + x]);
    }
    return acc;
  });
  return lambda * (total / static_cast<double>(frame.pixel_count()));
}

BinaryMask foreground_mask(const GrayFrame& frame, const BackgroundModel& model,
                           double threshold, const ExecPolicy& exec) {
  if (threshold < 0.0) throw std::invalid_argument("foreground_mask: threshold must be >= 0");
  require_same_size(model.width, model.height, frame.width, frame.height, "foreground_mask");
  BinaryMask mask = BinaryMask::black(frame.width, frame.height);
  const int w = model.width;
  for_rows(exec, model.height, [&](int y) {
    const std::size_t row = static_cast<std::size_t>(y) * w;
    for (int x = 0; x < w; ++x) {
      const double diff = std::abs(static_cast<double>(frame.pixels[row + x]) - model.mean[row + x]);
      mask.pixels[row + x] = diff >= threshold ? 255 : 0;
    }
  });
  return mask;
}

}  // namespace shapemotion
