#include "vbseg/raster.hpp"

#include <algorithm>
#include <fstream>
#include <iterator>
#include <map>

namespace vbseg {

std::size_t count_foreground(const BinaryMask &mask) {
  return static_cast<std::size_t>(
      std::count_if(mask.pixels().begin(), mask.pixels().end(), [](auto b) { return b != 0; }));
}

LabelMap::LabelMap(std::size_t width, std::size_t height) : raster_(width, height, 0) {}

LabelMap::LabelMap(std::size_t width, std::size_t height, std::vector<std::uint32_t> labels)
    : raster_(width, height, std::move(labels)) {
  std::map<std::uint32_t, std::uint32_t> remap;
  for (auto v : raster_.pixels())
    if (v != 0)
      remap.emplace(v, 0);
  std::uint32_t next = 0;
  for (auto &[from, to] : remap)
    to = ++next;
  for (auto &v : raster_.pixels())
    if (v != 0)
      v = remap[v];
  max_label_ = next;
}

namespace {

bool is_space(std::uint8_t c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f';
}

// Tokenizer for the PNM header grammar: whitespace separated tokens, '#'
// starts a comment that runs to end of line.
class HeaderReader {
public:
  explicit HeaderReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  std::size_t next_number(const char *what) {
    skip_blank();
    if (pos_ >= bytes_.size())
      throw Error(Errc::bad_header, std::string("missing ") + what);
    std::size_t value = 0;
    std::size_t digits = 0;
    while (pos_ < bytes_.size() && !is_space(bytes_[pos_]) && bytes_[pos_] != '#') {
      const auto c = bytes_[pos_];
      if (c < '0' || c > '9')
        throw Error(Errc::bad_header, std::string("non-numeric ") + what);
      if (value > 100'000'000)
        throw Error(Errc::bad_header, std::string(what) + " too large");
      value = value * 10 + static_cast<std::size_t>(c - '0');
      ++pos_;
      ++digits;
    }
    if (digits == 0)
      throw Error(Errc::bad_header, std::string("missing ") + what);
    return value;
  }

  // Exactly one whitespace byte separates maxval from the raster.
  std::size_t payload_offset() {
    if (pos_ >= bytes_.size() || !is_space(bytes_[pos_]))
      throw Error(Errc::bad_header, "header not terminated by whitespace");
    return pos_ + 1;
  }

  void skip(std::size_t n) { pos_ += n; }

private:
  void skip_blank() {
    while (pos_ < bytes_.size()) {
      if (is_space(bytes_[pos_])) {
        ++pos_;
      } else if (bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n' && bytes_[pos_] != '\r')
          ++pos_;
      } else {
        break;
      }
    }
  }

  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

struct PnmHeader {
  std::size_t width;
  std::size_t height;
  std::size_t payload_offset;
};

PnmHeader parse_header(std::span<const std::uint8_t> bytes, char kind) {
  if (bytes.size() < 2 || bytes[0] != 'P' || bytes[1] != static_cast<std::uint8_t>(kind))
    throw Error(Errc::bad_magic, std::string("expected P") + kind);
  HeaderReader reader(bytes);
  reader.skip(2);
  const auto width = reader.next_number("width");
  const auto height = reader.next_number("height");
  const auto maxval = reader.next_number("maxval");
  if (width == 0 || height == 0)
    throw Error(Errc::bad_header, "dimensions must be positive");
  if (maxval == 0 || maxval > 255)
    throw Error(Errc::bad_header, "maxval must be in 1..255");
  return {width, height, reader.payload_offset()};
}

void append_header(Bytes &out, const char *magic, std::size_t w, std::size_t h) {
  const std::string header = std::string(magic) + "\n" + std::to_string(w) + " " +
                             std::to_string(h) + "\n255\n";
  out.insert(out.end(), header.begin(), header.end());
}

} // namespace

GrayImage read_pgm(std::span<const std::uint8_t> bytes) {
  const auto h = parse_header(bytes, '5');
  const std::size_t need = h.width * h.height;
  if (bytes.size() - h.payload_offset < need)
    throw Error(Errc::truncated, "expected " + std::to_string(need) + " pixel bytes, got " +
                                     std::to_string(bytes.size() - h.payload_offset));
  const auto first = bytes.begin() + static_cast<std::ptrdiff_t>(h.payload_offset);
  return GrayImage(h.width, h.height,
                   std::vector<std::uint8_t>(first, first + static_cast<std::ptrdiff_t>(need)));
}

Bytes write_pgm(const GrayImage &img) {
  Bytes out;
  append_header(out, "P5", img.width(), img.height());
  out.insert(out.end(), img.pixels().begin(), img.pixels().end());
  return out;
}

Bytes write_ppm_overlay(const GrayImage &img, const LabelMap &labels,
                        std::span<const Rgb> palette) {
  if (img.width() != labels.width() || img.height() != labels.height())
    throw Error(Errc::dimension_mismatch, "overlay image and label map differ in size");
  if (palette.size() <= labels.max_label())
    throw Error(Errc::palette_too_small, "palette has " + std::to_string(palette.size()) +
                                             " entries, need " +
                                             std::to_string(labels.max_label() + 1));
  Bytes out;
  append_header(out, "P6", img.width(), img.height());
  out.reserve(out.size() + img.size() * 3);
  for (std::size_t i = 0; i < img.size(); ++i) {
    const auto k = labels[i];
    if (k == 0) {
      out.insert(out.end(), 3, img[i]);
    } else {
      out.insert(out.end(), palette[k].begin(), palette[k].end());
    }
  }
  return out;
}

RgbImage read_ppm(std::span<const std::uint8_t> bytes) {
  const auto h = parse_header(bytes, '6');
  const std::size_t need = h.width * h.height * 3;
  if (bytes.size() - h.payload_offset < need)
    throw Error(Errc::truncated, "PPM payload too short");
  RgbImage out{h.width, h.height, std::vector<Rgb>(h.width * h.height)};
  for (std::size_t i = 0; i < out.pixels.size(); ++i)
    for (std::size_t c = 0; c < 3; ++c)
      out.pixels[i][c] = bytes[h.payload_offset + 3 * i + c];
  return out;
}

std::vector<Rgb> default_palette(std::size_t entries) {
  // L5..L1 get the first five; extra components cycle through the rest.
  static constexpr std::array<Rgb, 8> base{{
      {230, 25, 75},
      {60, 180, 75},
      {255, 225, 25},
      {0, 130, 200},
      {245, 130, 48},
      {145, 30, 180},
      {70, 240, 240},
      {240, 50, 230},
  }};
  std::vector<Rgb> palette(std::max<std::size_t>(entries, 1), Rgb{0, 0, 0});
  for (std::size_t k = 1; k < palette.size(); ++k)
    palette[k] = base[(k - 1) % base.size()];
  return palette;
}

GrayImage mask_to_gray(const BinaryMask &mask) {
  GrayImage img(mask.width(), mask.height());
  for (std::size_t i = 0; i < mask.size(); ++i)
    img[i] = mask[i] ? 255 : 0;
  return img;
}

BinaryMask gray_to_mask(const GrayImage &img) {
  BinaryMask mask(img.width(), img.height());
  for (std::size_t i = 0; i < img.size(); ++i)
    mask[i] = img[i] != 0 ? 1 : 0;
  return mask;
}

GrayImage labels_to_gray(const LabelMap &labels) {
  if (labels.max_label() > 255)
    throw Error(Errc::invalid_argument, "label map has more than 255 labels");
  GrayImage img(labels.width(), labels.height());
  for (std::size_t i = 0; i < labels.size(); ++i)
    img[i] = static_cast<std::uint8_t>(labels[i]);
  return img;
}

Bytes read_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw Error(Errc::io, "cannot open " + path);
  return Bytes(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

void write_file(const std::string &path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out)
    throw Error(Errc::io, "cannot write " + path);
  out.write(reinterpret_cast<const char *>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out)
    throw Error(Errc::io, "short write to " + path);
}

} // namespace vbseg
