#pragma once

#include <string>
#include <vector>

#include "shapemotion/exec.hpp"
#include "shapemotion/frame.hpp"

namespace shapemotion {

/// Separable Gaussian smoothing with kernel exp(-k^2 / 2 sigma^2),
/// k in [-radius, radius], normalized to sum 1. Borders replicate the
/// nearest pixel. The intermediate pass stays in real arithmetic; only the
/// final output is rounded to 0..255.
GrayFrame gaussian_blur(const GrayFrame& frame, double sigma, int radius,
                        const ExecPolicy& exec = {});

enum class MorphOp { Dilate, Erode, Open, Close };

MorphOp morph_op_from_string(const std::string& name);
std::string to_string(MorphOp op);

/// 3x3 box structuring element. Out-of-bounds neighbors are black.
/// Open = erode then dilate; close = dilate then erode.
BinaryMask morphology(const BinaryMask& mask, MorphOp op, const ExecPolicy& exec = {});

/// Applies a sequence of operations, each `iterations` times.
BinaryMask morphology_sequence(const BinaryMask& mask, const std::vector<MorphOp>& ops,
                               int iterations, const ExecPolicy& exec = {});

}  // namespace shapemotion
