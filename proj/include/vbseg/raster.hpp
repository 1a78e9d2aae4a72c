#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "vbseg/error.hpp"

namespace vbseg {

/**
 * Row-major 2-D buffer. Row 0 is the top of the image, so "inferior" in the
 * anatomical sense means a larger row index.
 *
 * The Tag parameter only distinguishes rasters that share a storage type
 * (grayscale pixels and mask bits are both bytes).
 */
template <typename T, typename Tag = void> class Raster {
public:
  using value_type = T;

  Raster(std::size_t width, std::size_t height, T fill = T{})
      : width_(width), height_(height), data_(checked_area(width, height), fill) {}

  Raster(std::size_t width, std::size_t height, std::vector<T> data)
      : width_(width), height_(height), data_(std::move(data)) {
    if (data_.size() != checked_area(width, height))
      throw Error(Errc::dimension_mismatch,
                  "raster of " + std::to_string(width) + "x" + std::to_string(height) +
                      " given " + std::to_string(data_.size()) + " values");
    if constexpr (std::is_floating_point_v<T>) {
      for (T v : data_)
        if (!std::isfinite(v))
          throw Error(Errc::invalid_argument, "non-finite raster value");
    }
  }

  std::size_t width() const noexcept { return width_; }
  std::size_t height() const noexcept { return height_; }
  std::size_t size() const noexcept { return data_.size(); }

  T &at(std::size_t row, std::size_t col) { return data_[row * width_ + col]; }
  const T &at(std::size_t row, std::size_t col) const { return data_[row * width_ + col]; }
  T &operator[](std::size_t i) { return data_[i]; }
  const T &operator[](std::size_t i) const { return data_[i]; }

  std::span<T> pixels() noexcept { return data_; }
  std::span<const T> pixels() const noexcept { return data_; }

  template <typename OtherT, typename OtherTag>
  bool same_shape(const Raster<OtherT, OtherTag> &o) const noexcept {
    return width_ == o.width() && height_ == o.height();
  }

  bool operator==(const Raster &) const = default;

private:
  static std::size_t checked_area(std::size_t w, std::size_t h) {
    if (w == 0 || h == 0)
      throw Error(Errc::invalid_argument, "raster dimensions must be positive");
    return w * h;
  }

  std::size_t width_;
  std::size_t height_;
  std::vector<T> data_;
};

struct MaskTag {};

/// 8-bit grayscale intensities.
using GrayImage = Raster<std::uint8_t>;
/// Real-valued intensities, always finite.
using FloatImage = Raster<double>;
/// Foreground bits stored as 0/1 bytes.
using BinaryMask = Raster<std::uint8_t, MaskTag>;

std::size_t count_foreground(const BinaryMask &mask);

/// Labels 0..L with 0 as background. Construction compacts whatever values
/// are supplied onto a gap-free range, keeping their relative order.
class LabelMap {
public:
  LabelMap(std::size_t width, std::size_t height);
  LabelMap(std::size_t width, std::size_t height, std::vector<std::uint32_t> labels);

  std::size_t width() const noexcept { return raster_.width(); }
  std::size_t height() const noexcept { return raster_.height(); }
  std::size_t size() const noexcept { return raster_.size(); }
  std::uint32_t max_label() const noexcept { return max_label_; }

  std::uint32_t at(std::size_t row, std::size_t col) const { return raster_.at(row, col); }
  std::uint32_t operator[](std::size_t i) const { return raster_[i]; }
  std::span<const std::uint32_t> labels() const noexcept { return raster_.pixels(); }

  bool operator==(const LabelMap &) const = default;

private:
  Raster<std::uint32_t> raster_;
  std::uint32_t max_label_ = 0;
};

using Rgb = std::array<std::uint8_t, 3>;
using Bytes = std::vector<std::uint8_t>;

/// Binary PGM (P5, maxval <= 255). Bytes after the pixel payload are ignored.
GrayImage read_pgm(std::span<const std::uint8_t> bytes);
Bytes write_pgm(const GrayImage &img);

/// Binary PPM where background pixels replicate the gray value and label k
/// takes palette[k].
Bytes write_ppm_overlay(const GrayImage &img, const LabelMap &labels,
                        std::span<const Rgb> palette);

/// Counterpart of write_ppm_overlay for checking written overlays.
struct RgbImage {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<Rgb> pixels;
};
RgbImage read_ppm(std::span<const std::uint8_t> bytes);

/// Default overlay colours; entry 0 is unused (background passes through).
std::vector<Rgb> default_palette(std::size_t entries);

GrayImage mask_to_gray(const BinaryMask &mask);
BinaryMask gray_to_mask(const GrayImage &img);
GrayImage labels_to_gray(const LabelMap &labels);

Bytes read_file(const std::string &path);
void write_file(const std::string &path, std::span<const std::uint8_t> bytes);

} // namespace vbseg
