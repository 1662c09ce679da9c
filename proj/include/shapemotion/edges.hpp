#pragma once

#include "shapemotion/exec.hpp"
#include "shapemotion/frame.hpp"

namespace shapemotion {

/// 3x3 Sobel gradients with replicated borders. Direction is
/// atan2(gy, gx) normalized into (-pi, pi].
GradientField sobel_gradients(const GrayFrame& frame, const ExecPolicy& exec = {});

/// Canny edge detection: Gaussian blur, Sobel gradients, non-maximum
/// suppression with the direction quantized to four sectors, then two-level
/// hysteresis with 8-connected linking. Requires 0 < low < high.
BinaryMask canny(const GrayFrame& frame, double low, double high, double sigma = 1.4,
                 int radius = 2, const ExecPolicy& exec = {});

/// Canny with scene-adaptive thresholds: high = high_ratio * max gradient
/// magnitude in the frame, low = high / 2. A frame with no gradient yields
/// an empty mask.
BinaryMask canny_auto(const GrayFrame& frame, double high_ratio = 0.3, double sigma = 1.4,
                      int radius = 2, const ExecPolicy& exec = {});

}  // namespace shapemotion
