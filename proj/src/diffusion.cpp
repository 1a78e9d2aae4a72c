#include "vbseg/diffusion.hpp"

#include <algorithm>
#include <cmath>

namespace vbseg {

void DiffusionParams::validate() const {
  if (iterations < 0)
    throw Error(Errc::invalid_argument, "diffusion iterations must be >= 0");
  if (!(kappa > 0.0) || !std::isfinite(kappa))
    throw Error(Errc::invalid_argument, "diffusion kappa must be > 0");
  if (!(step > 0.0 && step <= 0.25))
    throw Error(Errc::invalid_argument, "diffusion step must be in (0, 0.25]");
}

FloatImage to_float(const GrayImage &img) {
  FloatImage out(img.width(), img.height());
  std::copy(img.pixels().begin(), img.pixels().end(), out.pixels().begin());
  return out;
}

FloatImage diffuse(const GrayImage &img, const DiffusionParams &params) {
  params.validate();
  const std::size_t w = img.width();
  const std::size_t h = img.height();
  FloatImage cur = to_float(img);
  FloatImage next = cur;
  const double inv_k2 = 1.0 / (params.kappa * params.kappa);
  auto flux = [inv_k2](double grad) { return std::exp(-grad * grad * inv_k2) * grad; };

  for (int it = 0; it < params.iterations; ++it) {
    for (std::size_t r = 0; r < h; ++r) {
      const std::size_t up = r == 0 ? 0 : r - 1;
      const std::size_t down = r + 1 == h ? r : r + 1;
      for (std::size_t c = 0; c < w; ++c) {
        const std::size_t left = c == 0 ? 0 : c - 1;
        const std::size_t right = c + 1 == w ? c : c + 1;
        const double v = cur.at(r, c);
        const double sum = flux(cur.at(up, c) - v) + flux(cur.at(down, c) - v) +
                           flux(cur.at(r, left) - v) + flux(cur.at(r, right) - v);
        next.at(r, c) = v + params.step * sum;
      }
    }
    std::swap(cur, next);
  }
  return cur;
}

GrayImage quantize(const FloatImage &img) {
  GrayImage out(img.width(), img.height());
  for (std::size_t i = 0; i < img.size(); ++i) {
    const double v = std::clamp(img[i], 0.0, 255.0);
    out[i] = static_cast<std::uint8_t>(std::floor(v + 0.5));
  }
  return out;
}

} // namespace vbseg
