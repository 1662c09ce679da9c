#include "shapemotion/filters.hpp"

#include <cmath>
#include <stdexcept>

namespace shapemotion {

GrayFrame gaussian_blur(const GrayFrame& frame, double sigma, int radius,
                        const ExecPolicy& exec) {
  if (sigma <= 0.0) throw std::invalid_argument("gaussian_blur: sigma must be > 0");
  if (radius < 1) throw std::invalid_argument("gaussian_blur: radius must be >= 1");

  std::vector<double> kernel(static_cast<std::size_t>(2 * radius + 1));
  double norm = 0.0;
  for (int k = -radius; k <= radius; ++k) {
    const double w = std::exp(-(static_cast<double>(k) * k) / (2.0 * sigma * sigma));
    kernel[k + radius] = w;
    norm += w;
  }
  for (double& w : kernel) w /= norm;

  const int w = frame.width;
  const int h = frame.height;
  const auto clampi = [](int v, int hi) { return v < 0 ? 0 : (v > hi ? hi : v); };

  std::vector<double> horiz(frame.pixel_count());
  for_rows(exec, h, [&](int y) {
    const std::size_t row = static_cast<std::size_t>(y) * w;
    for (int x = 0; x < w; ++x) {
      double acc = 0.0;
      for (int k = -radius; k <= radius; ++k) {
        acc += kernel[k + radius] * frame.pixels[row + clampi(x + k, w - 1)];
      }
      horiz[row + x] = acc;
    }
  });

  GrayFrame out;
  out.width = w;
  out.height = h;
  out.index = frame.index;
  out.timestamp = frame.timestamp;
  out.pixels.resize(frame.pixel_count());
  for_rows(exec, h, [&](int y) {
    for (int x = 0; x < w; ++x) {
      double acc = 0.0;
      for (int k = -radius; k <= radius; ++k) {
        acc += kernel[k + radius] * horiz[static_cast<std::size_t>(clampi(y + k, h - 1)) * w + x];
      }
      const long v = std::lround(acc);
      out.pixels[static_cast<std::size_t>(y) * w + x] =
          static_cast<std::uint8_t>(v < 0 ? 0 : (v > 255 ? 255 : v));
    }
  });
  return out;
}

namespace {

BinaryMask morph_pass(const BinaryMask& mask, bool dilate, const ExecPolicy& exec) {
  BinaryMask out = BinaryMask::black(mask.width, mask.height);
  for_rows(exec, mask.height, [&](int y) {
    for (int x = 0; x < mask.width; ++x) {
      bool hit = dilate ? false : true;
      for (int dy = -1; dy <= 1; ++dy) {
        for (int dx = -1; dx <= 1; ++dx) {
          const bool white = mask.white(x + dx, y + dy);
          if (dilate) {
            hit = hit || white;
          } else {
            hit = hit && white;
          }
        }
      }
      out.at(x, y) = hit ? 255 : 0;
    }
  });
  return out;
}

}  // namespace

BinaryMask morphology(const BinaryMask& mask, MorphOp op, const ExecPolicy& exec) {
  switch (op) {
    case MorphOp::Dilate:
      return morph_pass(mask, true, exec);
    case MorphOp::Erode:
      return morph_pass(mask, false, exec);
    case MorphOp::Open:
      return morph_pass(morph_pass(mask, false, exec), true, exec);
    case MorphOp::Close:
      return morph_pass(morph_pass(mask, true, exec), false, exec);
  }
  throw std::logic_error("morphology: unknown op");
}

BinaryMask morphology_sequence(const BinaryMask& mask, const std::vector<MorphOp>& ops,
                               int iterations, const ExecPolicy& exec) {
  BinaryMask cur = mask;
  for (const MorphOp op : ops) {
    for (int i = 0; i < iterations; ++i) cur = morphology(cur, op, exec);
  }
  return cur;
}

MorphOp morph_op_from_string(const std::string& name) {
  if (name == "dilate") return MorphOp::Dilate;
  if (name == "erode") return MorphOp::Erode;
  if (name == "open") return MorphOp::Open;
  if (name == "close") return MorphOp::Close;
  throw std::invalid_argument("unknown morphology op: " + name);
}

std::string to_string(MorphOp op) {
  switch (op) {
    case MorphOp::Dilate: return "dilate";
    case MorphOp::Erode: return "erode";
    case MorphOp::Open: return "open";
    case MorphOp::Close: return "close";
  }
  return "?";
}

}  // namespace shapemotion
