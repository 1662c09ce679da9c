#include "shapemotion/edges.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "shapemotion/filters.hpp"

namespace shapemotion {

GradientField sobel_gradients(const GrayFrame& frame, const ExecPolicy& exec) {
  if (frame.width < 3 || frame.height < 3) {
    throw std::invalid_argument("sobel_gradients: frame must be at least 3x3");
  }
  const int w = frame.width;
  const int h = frame.height;
  GradientField field;
  field.width = w;
  field.height = h;
  field.magnitude.resize(frame.pixel_count());
  field.direction.resize(frame.pixel_count());

  const auto clampi = [](int v, int hi) { return v < 0 ? 0 : (v > hi ? hi : v); };
  for_rows(exec, h, [&](int y) {
    for (int x = 0; x < w; ++x) {
      double p[3][3];
      for (int dy = -1; dy <= 1; ++dy) {
        for (int dx = -1; dx <= 1; ++dx) {
          p[dy + 1][dx + 1] = frame.at(clampi(x + dx, w - 1), clampi(y + dy, h - 1));
        }
      }
      const double gx = (p[0][2] + 2.0 * p[1][2] + p[2][2]) - (p[0][0] + 2.0 * p[1][0] + p[2][0]);
      const double gy = (p[2][0] + 2.0 * p[2][1] + p[2][2]) - (p[0][0] + 2.0 * p[0][1] + p[0][2]);
      const std::size_t i = static_cast<std::size_t>(y) * w + x;
      field.magnitude[i] = std::hypot(gx, gy);
      double dir = std::atan2(gy, gx);
      if (dir <= -std::numbers::pi) dir = std::numbers::pi;
      field.direction[i] = dir;
    }
  });
  return field;
}

namespace {

// Keeps a pixel only when it dominates its two neighbors along the quantized
// gradient direction: strictly greater than the negative-side neighbor and at
// least as large as the positive side, so a tied plateau survives as a single
// line instead of a pair.
std::vector<double> non_max_suppression(const GradientField& g, const ExecPolicy& exec) {
  const int w = g.width;
  const int h = g.height;
  std::vector<double> kept(g.magnitude.size(), 0.0);
  constexpr double pi = std::numbers::pi;
  for_rows(exec, h, [&](int y) {
    for (int x = 0; x < w; ++x) {
      const std::size_t i = static_cast<std::size_t>(y) * w + x;
      const double m = g.magnitude[i];
      if (m <= 0.0) continue;
      double a = g.direction[i];
      if (a < 0.0) a += pi;  // fold into [0, pi)
      if (a >= pi) a -= pi;
      int dx = 1, dy = 0;
      if (a < pi / 8.0 || a >= 7.0 * pi / 8.0) {
        dx = 1; dy = 0;
      } else if (a < 3.0 * pi / 8.0) {
        dx = 1; dy = 1;
      } else if (a < 5.0 * pi / 8.0) {
        dx = 0; dy = 1;
      } else {
        dx = 1; dy = -1;
      }
      const auto mag_at = [&](int nx, int ny) -> double {
        if (nx < 0 || ny < 0 || nx >= w || ny >= h) return 0.0;
        return g.magnitude[static_cast<std::size_t>(ny) * w + nx];
      };
      const double neg = mag_at(x - dx, y - dy);
      const double pos = mag_at(x + dx, y + dy);
      if (m > neg && m >= pos) kept[i] = m;
    }
  });
  return kept;
}

BinaryMask hysteresis(const std::vector<double>& kept, int w, int h, double low, double high) {
  BinaryMask out = BinaryMask::black(w, h);
  std::vector<std::size_t> stack;
  for (std::size_t i = 0; i < kept.size(); ++i) {
    if (kept[i] >= high && out.pixels[i] == 0) {
      out.pixels[i] = 255;
      stack.push_back(i);
    }
  }
  while (!stack.empty()) {
    const std::size_t i = stack.back();
    stack.pop_back();
    const int x = static_cast<int>(i % w);
    const int y = static_cast<int>(i / w);
    for (int dy = -1; dy <= 1; ++dy) {
      for (int dx = -1; dx <= 1; ++dx) {
        const int nx = x + dx;
        const int ny = y + dy;
        if (nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
        const std::size_t n = static_cast<std::size_t>(ny) * w + nx;
        if (out.pixels[n] == 0 && kept[n] >= low) {
          out.pixels[n] = 255;
          stack.push_back(n);
        }
      }
    }
  }
  return out;
}

}  // namespace

BinaryMask canny(const GrayFrame& frame, double low, double high, double sigma, int radius,
                 const ExecPolicy& exec) {
  if (!(low > 0.0) || !(low < high)) {
    throw std::invalid_argument("canny: thresholds must satisfy 0 < low < high");
  }
  const GrayFrame blurred = gaussian_blur(frame, sigma, radius, exec);
  const GradientField grad = sobel_gradients(blurred, exec);
  const std::vector<double> kept = non_max_suppression(grad, exec);
  return hysteresis(kept, frame.width, frame.height, low, high);
}

BinaryMask canny_auto(const GrayFrame& frame, double high_ratio, double sigma, int radius,
                      const ExecPolicy& exec) {
  if (high_ratio <= 0.0 || high_ratio >= 1.0) {
    throw std::invalid_argument("canny_auto: high_ratio must be in (0, 1)");
  }
  const GrayFrame blurred = gaussian_blur(frame, sigma, radius, exec);
  const GradientField grad = sobel_gradients(blurred, exec);
  const int w = grad.width;
  const double max_mag = max_rows(exec, grad.height, [&](int y) {
    double best = 0.0;
    const std::size_t row = static_cast<std::size_t>(y) * w;
    for (int x = 0; x < w; ++x) best = std::max(best, grad.magnitude[row + x]);
    return best;
  });
  if (max_mag <= 0.0) return BinaryMask::black(frame.width, frame.height);
  const double high = high_ratio * max_mag;
  const std::vector<double> kept = non_max_suppression(grad, exec);
  return hysteresis(kept, frame.width, frame.height, high / 2.0, high);
}

}  // namespace shapemotion
