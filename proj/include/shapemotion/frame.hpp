#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace shapemotion {

/// RGB raster, 3 bytes per pixel, row-major.
struct ColorFrame {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;
  int index = 0;
  double timestamp = 0.0;

  std::size_t pixel_count() const { return static_cast<std::size_t>(width) * height; }
};

/// Single-channel 8-bit raster.
struct GrayFrame {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;
  int index = 0;
  double timestamp = 0.0;

  static GrayFrame filled(int w, int h, std::uint8_t value) {
    if (w < 1 || h < 1) throw std::invalid_argument("frame dimensions must be >= 1");
    GrayFrame f;
    f.width = w;
    f.height = h;
    f.pixels.assign(static_cast<std::size_t>(w) * h, value);
    return f;
  }

  std::uint8_t at(int x, int y) const { return pixels[static_cast<std::size_t>(y) * width + x]; }
  std::uint8_t& at(int x, int y) { return pixels[static_cast<std::size_t>(y) * width + x]; }
  std::size_t pixel_count() const { return static_cast<std::size_t>(width) * height; }
};

/// Raster restricted to the values {0, 255}.
struct BinaryMask {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;

  static BinaryMask black(int w, int h) {
    if (w < 1 || h < 1) throw std::invalid_argument("mask dimensions must be >= 1");
    BinaryMask m;
    m.width = w;
    m.height = h;
    m.pixels.assign(static_cast<std::size_t>(w) * h, 0);
    return m;
  }

  std::uint8_t at(int x, int y) const { return pixels[static_cast<std::size_t>(y) * width + x]; }
  std::uint8_t& at(int x, int y) { return pixels[static_cast<std::size_t>(y) * width + x]; }

  /// Out-of-bounds coordinates read as black.
  bool white(int x, int y) const {
    if (x < 0 || y < 0 || x >= width || y >= height) return false;
    return at(x, y) == 255;
  }

  std::size_t white_count() const {
    std::size_t n = 0;
    for (std::uint8_t p : pixels) n += (p == 255);
    return n;
  }

  bool operator==(const BinaryMask&) const = default;
};

/// Per-pixel gradient magnitude and direction (radians in (-pi, pi]).
struct GradientField {
  int width = 0;
  int height = 0;
  std::vector<double> magnitude;
  std::vector<double> direction;

  double mag(int x, int y) const { return magnitude[static_cast<std::size_t>(y) * width + x]; }
  double dir(int x, int y) const { return direction[static_cast<std::size_t>(y) * width + x]; }
};

inline void require_same_size(int wa, int ha, int wb, int hb, const char* what) {
  if (wa != wb || ha != hb) throw std::invalid_argument(std::string(what) + ": dimension mismatch");
}

}  // namespace shapemotion
