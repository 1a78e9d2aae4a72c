#pragma once

#include "vbseg/raster.hpp"

namespace vbseg {

/// Perona-Malik settings. kappa is in intensity units; step must respect the
/// 4-neighbour stability bound.
struct DiffusionParams {
  int iterations = 10;
  double kappa = 15.0;
  double step = 0.25;

  void validate() const;
};

/// Explicit 4-neighbour Perona-Malik smoothing with exponential conductance
/// exp(-(s/kappa)^2) and replicated borders. Each iteration reads only the
/// previous buffer.
FloatImage diffuse(const GrayImage &img, const DiffusionParams &params);

FloatImage to_float(const GrayImage &img);

/// Clamp to [0,255] and round half up.
GrayImage quantize(const FloatImage &img);

} // namespace vbseg
