#include "vbseg/phantom.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace vbseg {

namespace {

std::size_t band_width(const PhantomSpec &s) { return std::max<std::size_t>(4, s.body_width / 3); }

// Standard normal deviates via Box-Muller so the stream depends only on the
// (fully specified) mt19937_64 output.
class Gaussian {
public:
  explicit Gaussian(std::uint64_t seed) : engine_(seed) {}

  double operator()() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = 0.0;
    do {
      u1 = uniform();
    } while (u1 <= 0.0);
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    have_spare_ = true;
    return radius * std::cos(angle);
  }

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

bool inside_rounded_rect(double r, double c, double top, double left, double h, double w,
                         double radius) {
  if (r < top || r >= top + h || c < left || c >= left + w)
    return false;
  // Distance measured from pixel centres to the corner arcs.
  const double pr = r + 0.5, pc = c + 0.5;
  const double cr = std::clamp(pr, top + radius, top + h - radius);
  const double cc = std::clamp(pc, left + radius, left + w - radius);
  const double dr = pr - cr, dc = pc - cc;
  return dr * dr + dc * dc <= radius * radius;
}

} // namespace

void PhantomSpec::validate() const {
  if (width == 0 || height == 0)
    throw Error(Errc::spec_overflow, "phantom canvas must be non-empty");
  if (num_bodies < 1 || num_bodies > 7)
    throw Error(Errc::spec_overflow, "phantom needs 1..7 bodies");
  if (body_width == 0 || body_height == 0)
    throw Error(Errc::spec_overflow, "body dimensions must be positive");
  const double ratio = static_cast<double>(body_width) / static_cast<double>(body_height);
  if (ratio < 1.5 || ratio > 2.0)
    throw Error(Errc::spec_overflow, "body width/height must lie in [1.5, 2.0]");
  if (!(noise_sigma >= 0.0) || !(bias_amplitude >= 0.0) || bias_amplitude >= 1.0)
    throw Error(Errc::spec_overflow, "noise must be >= 0 and bias in [0, 1)");
  const std::size_t stack = num_bodies * body_height + (num_bodies - 1) * gap;
  if (stack + 2 > height)
    throw Error(Errc::spec_overflow, "bodies do not fit vertically");
  if (body_width + 2 * band_width(*this) + 2 > width)
    throw Error(Errc::spec_overflow, "bodies and muscle bands do not fit horizontally");
}

Phantom generate_phantom(const PhantomSpec &spec) {
  spec.validate();
  const std::size_t w = spec.width, h = spec.height;
  const std::size_t band = band_width(spec);
  const std::size_t stack = spec.num_bodies * spec.body_height + (spec.num_bodies - 1) * spec.gap;
  const std::size_t top = (h - stack) / 2;
  const std::size_t left = (w - spec.body_width) / 2;
  const double radius = static_cast<double>(spec.body_height) / 6.0;

  Phantom out{GrayImage(w, h), BinaryMask(w, h), {}};
  std::vector<double> clean(w * h, kPhantomBackground);

  // Muscle bands run the full stack height directly against the bodies.
  for (std::size_t r = top; r < top + stack; ++r) {
    for (std::size_t c = left - band; c < left; ++c)
      clean[r * w + c] = kPhantomMuscle;
    for (std::size_t c = left + spec.body_width; c < left + spec.body_width + band; ++c)
      clean[r * w + c] = kPhantomMuscle;
  }
  for (std::size_t b = 0; b < spec.num_bodies; ++b) {
    const std::size_t body_top = top + b * (spec.body_height + spec.gap);
    for (std::size_t r = body_top; r < body_top + spec.body_height; ++r) {
      for (std::size_t c = left; c < left + spec.body_width; ++c) {
        if (inside_rounded_rect(static_cast<double>(r), static_cast<double>(c),
                                static_cast<double>(body_top), static_cast<double>(left),
                                static_cast<double>(spec.body_height),
                                static_cast<double>(spec.body_width), radius)) {
          clean[r * w + c] = kPhantomBone;
          out.truth.at(r, c) = 1;
        }
      }
    }
  }

  Gaussian rng(spec.seed);
  const double phase_col = 2.0 * std::numbers::pi * rng.uniform();
  const double phase_row = 2.0 * std::numbers::pi * rng.uniform();
  for (std::size_t r = 0; r < h; ++r) {
    for (std::size_t c = 0; c < w; ++c) {
      const double fc = std::cos(std::numbers::pi * static_cast<double>(c) /
                                     static_cast<double>(w) + phase_col);
      const double fr = std::cos(std::numbers::pi * static_cast<double>(r) /
                                     static_cast<double>(h) + phase_row);
      const double bias = 1.0 + spec.bias_amplitude * 0.5 * (fc + fr);
      double v = clean[r * w + c] * bias;
      if (spec.noise_sigma > 0.0)
        v += spec.noise_sigma * rng();
      out.image.at(r, c) = static_cast<std::uint8_t>(std::floor(std::clamp(v, 0.0, 255.0) + 0.5));
    }
  }

  for (std::size_t b = 0; b < spec.num_bodies && b < 5; ++b)
    out.names.push_back(static_cast<VertebraName>(4 - b));
  return out;
}

} // namespace vbseg
