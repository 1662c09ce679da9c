#include "shapemotion/imgio.hpp"

#include <cctype>
#include <cmath>
#include <fstream>

namespace shapemotion {
namespace {

// Reads one whitespace-delimited header token, skipping '#' comments.
std::string next_token(std::istream& in, const std::string& path) {
  std::string tok;
  int c = in.get();
  while (c != EOF) {
    if (c == '#') {
      while (c != EOF && c != '\n') c = in.get();
    } else if (std::isspace(c)) {
      c = in.get();
    } else {
      break;
    }
  }
  while (c != EOF && !std::isspace(c) && c != '#') {
    tok.push_back(static_cast<char>(c));
    c = in.get();
  }
  if (c == '#') in.unget();
  if (tok.empty()) throw std::runtime_error(path + ": truncated header");
  return tok;
}

int parse_positive(const std::string& tok, const std::string& path, const char* what) {
  std::size_t pos = 0;
  int value = 0;
  try {
    value = std::stoi(tok, &pos);
  } catch (const std::exception&) {
    throw std::runtime_error(path + ": bad " + what + " '" + tok + "'");
  }
  if (pos != tok.size() || value < 1) {
    throw std::runtime_error(path + ": bad " + what + " '" + tok + "'");
  }
  return value;
}

void read_payload(std::istream& in, std::vector<std::uint8_t>& pixels, const std::string& path) {
  // Header tokens are followed by exactly one whitespace byte before data;
  // next_token already consumed it.
  in.read(reinterpret_cast<char*>(pixels.data()), static_cast<std::streamsize>(pixels.size()));
  if (static_cast<std::size_t>(in.gcount()) != pixels.size()) {
    throw std::runtime_error(path + ": truncated pixel data");
  }
}

}  // namespace

LoadedFrame load_frame(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error(path + ": cannot open file");

  char magic[2] = {0, 0};
  in.read(magic, 2);
  if (in.gcount() != 2 || magic[0] != 'P' || (magic[1] != '5' && magic[1] != '6')) {
    throw std::runtime_error(path + ": not a binary PGM/PPM file (bad magic)");
  }
  const bool color = magic[1] == '6';

  const int width = parse_positive(next_token(in, path), path, "width");
  const int height = parse_positive(next_token(in, path), path, "height");
  const int maxval = parse_positive(next_token(in, path), path, "max value");
  if (maxval != 255) throw std::runtime_error(path + ": unsupported max value (expected 255)");

  if (color) {
    ColorFrame f;
    f.width = width;
    f.height = height;
    f.pixels.resize(static_cast<std::size_t>(width) * height * 3);
    read_payload(in, f.pixels, path);
    return f;
  }
  GrayFrame f;
  f.width = width;
  f.height = height;
  f.pixels.resize(static_cast<std::size_t>(width) * height);
  read_payload(in, f.pixels, path);
  return f;
}

GrayFrame load_gray(const std::string& path) {
  LoadedFrame loaded = load_frame(path);
  if (auto* g = std::get_if<GrayFrame>(&loaded)) return std::move(*g);
  return to_grayscale(std::get<ColorFrame>(loaded));
}

GrayFrame to_grayscale(const ColorFrame& frame) {
  GrayFrame out;
  out.width = frame.width;
  out.height = frame.height;
  out.index = frame.index;
  out.timestamp = frame.timestamp;
  out.pixels.resize(frame.pixel_count());
  for (std::size_t i = 0; i < out.pixels.size(); ++i) {
    const double r = frame.pixels[i * 3 + 0];
    const double g = frame.pixels[i * 3 + 1];
    const double b = frame.pixels[i * 3 + 2];
    const long v = std::lround(0.299 * r + 0.587 * g + 0.114 * b);
    out.pixels[i] = static_cast<std::uint8_t>(v < 0 ? 0 : (v > 255 ? 255 : v));
  }
  return out;
}

namespace {

void write_p5(const std::uint8_t* data, int width, int height, const std::string& path) {
  if (width < 1 || height < 1) throw std::invalid_argument("refusing to write empty image");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error(path + ": cannot open for writing");
  out << "P5\n" << width << ' ' << height << "\n255\n";
  out.write(reinterpret_cast<const char*>(data),
            static_cast<std::streamsize>(width) * height);
  if (!out) throw std::runtime_error(path + ": write failed");
}

}  // namespace

void save_gray(const GrayFrame& frame, const std::string& path) {
  if (frame.pixels.size() != frame.pixel_count()) {
    throw std::invalid_argument("frame pixel buffer does not match dimensions");
  }
  write_p5(frame.pixels.data(), frame.width, frame.height, path);
}

void save_mask(const BinaryMask& mask, const std::string& path) {
  write_p5(mask.pixels.data(), mask.width, mask.height, path);
}

}  // namespace shapemotion
