#pragma once

#include <cstdint>
#include <vector>

#include "vbseg/morphology.hpp"
#include "vbseg/raster.hpp"

namespace vbseg {

/// Synthetic sagittal slice: a vertical stack of bright rounded bodies with
/// mid-gray muscle bands along both flanks, on a dark background.
struct PhantomSpec {
  std::size_t width = 256;
  std::size_t height = 256;
  std::size_t num_bodies = 5;
  std::size_t body_width = 70;
  std::size_t body_height = 40;
  std::size_t gap = 8;
  double noise_sigma = 0.0;
  /// Multiplicative field spans 1 - amplitude .. 1 + amplitude.
  double bias_amplitude = 0.0;
  std::uint64_t seed = 0;

  void validate() const;
};

inline constexpr double kPhantomBackground = 40.0;
inline constexpr double kPhantomMuscle = 120.0;
inline constexpr double kPhantomBone = 190.0;

struct Phantom {
  GrayImage image;
  BinaryMask truth;
  /// Bottom-up, so names.front() is L5.
  std::vector<VertebraName> names;
};

/// Deterministic for a given PhantomSpec, seed included. Throws SpecOverflow when
/// the bodies and flanking bands do not fit on the canvas.
Phantom generate_phantom(const PhantomSpec &spec);

} // namespace vbseg
