#pragma once

#include <string>
#include <variant>

#include "shapemotion/frame.hpp"

namespace shapemotion {

using LoadedFrame = std::variant<GrayFrame, ColorFrame>;

/// Loads a binary PGM (P5) or PPM (P6) file with max value 255.
/// '#' comment lines in the header are skipped.
LoadedFrame load_frame(const std::string& path);

/// Loads either format and converts color frames to grayscale.
GrayFrame load_gray(const std::string& path);

/// Rec.601 luma: round(0.299 R + 0.587 G + 0.114 B), clamped to 0..255.
/// Index and timestamp are preserved.
GrayFrame to_grayscale(const ColorFrame& frame);

/// Writes a binary P5 file with max value 255. Round-trips bit-exactly
/// through load_frame.
void save_gray(const GrayFrame& frame, const std::string& path);

/// Writes a mask as P5 (masks are valid grayscale images).
void save_mask(const BinaryMask& mask, const std::string& path);

}  // namespace shapemotion
