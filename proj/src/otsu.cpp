#include "vbseg/clustering.hpp"

#include <array>
#include <cstdint>

namespace vbseg {

namespace {

__extension__ typedef unsigned __int128 u128;

// Between-class variance at threshold t is proportional to
// (N*S0 - n0*S)^2 / (n0*n1), with n0/S0 the count and sum of pixels <= t.
// Candidates are compared exactly as integer fractions.
struct Score {
  u128 quotient = 0;
  std::uint64_t remainder = 0;
  std::uint64_t denominator = 1;

  bool greater_than(const Score &o) const {
    if (quotient != o.quotient)
      return quotient > o.quotient;
    return static_cast<u128>(remainder) * o.denominator >
           static_cast<u128>(o.remainder) * denominator;
  }
};

} // namespace

std::uint8_t otsu_threshold(std::span<const std::uint8_t> pixels) {
  // Keeps numerator^2 and remainder products inside 128 bits.
  if (pixels.size() > (std::size_t{1} << 24))
    throw Error(Errc::invalid_argument, "image too large for exact Otsu scoring");
  std::array<std::uint64_t, 256> hist{};
  for (auto p : pixels)
    ++hist[p];

  const std::int64_t n = static_cast<std::int64_t>(pixels.size());
  std::int64_t total = 0;
  std::size_t occupied = 0;
  for (std::size_t v = 0; v < 256; ++v) {
    total += static_cast<std::int64_t>(v * hist[v]);
    occupied += hist[v] > 0;
  }
  if (occupied < 2)
    throw Error(Errc::single_class, "image has a single intensity");

  std::int64_t n0 = 0;
  std::int64_t s0 = 0;
  Score best;
  std::uint8_t best_t = 0;
  bool have_best = false;
  for (std::size_t t = 0; t < 255; ++t) {
    n0 += static_cast<std::int64_t>(hist[t]);
    s0 += static_cast<std::int64_t>(t * hist[t]);
    const std::int64_t n1 = n - n0;
    Score score;
    if (n0 > 0 && n1 > 0) {
      const std::int64_t diff = n * s0 - n0 * total;
      const u128 mag = static_cast<u128>(diff < 0 ? -diff : diff);
      const auto den = static_cast<std::uint64_t>(n0) * static_cast<std::uint64_t>(n1);
      const u128 sq = mag * mag;
      score = {sq / den, static_cast<std::uint64_t>(sq % den), den};
    }
    if (!have_best || score.greater_than(best)) {
      best = score;
      best_t = static_cast<std::uint8_t>(t);
      have_best = true;
    }
  }
  return best_t;
}

std::uint8_t otsu_threshold(const GrayImage &img) { return otsu_threshold(img.pixels()); }

BinaryMask threshold_mask(const GrayImage &img, std::uint8_t t) {
  BinaryMask mask(img.width(), img.height());
  for (std::size_t i = 0; i < img.size(); ++i)
    mask[i] = img[i] > t ? 1 : 0;
  return mask;
}

} // namespace vbseg
