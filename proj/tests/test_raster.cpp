#include <doctest.h>

#include <random>
#include <string>

#include "vbseg/raster.hpp"

using namespace vbseg;

namespace {
Bytes bytes_of(const std::string &header, std::initializer_list<std::uint8_t> payload = {}) {
  Bytes b(header.begin(), header.end());
  b.insert(b.end(), payload);
  return b;
}

Errc code_of(auto &&fn) {
  try {
    fn();
  } catch (const Error &e) {
    return e.code();
  }
  FAIL("expected an Error");
  return Errc::io;
}
} // namespace

TEST_CASE("read_pgm decodes minimal files") {
  const auto img = read_pgm(bytes_of("P5 2 2 255\n", {0, 255, 255, 0}));
  CHECK(img.width() == 2);
  CHECK(img.height() == 2);
  CHECK(std::vector<std::uint8_t>(img.pixels().begin(), img.pixels().end()) ==
        std::vector<std::uint8_t>{0, 255, 255, 0});

  const auto one = read_pgm(bytes_of("P5 1 1 255\n", {7}));
  CHECK(one.size() == 1);
  CHECK(one[0] == 7);
}

TEST_CASE("read_pgm header grammar") {
  SUBCASE("comments and mixed whitespace") {
    const auto img = read_pgm(bytes_of("P5\n# made by hand\n2\t1 # width then height\n255\n", {3, 4}));
    CHECK(img.width() == 2);
    CHECK(img.at(0, 1) == 4);
  }
  SUBCASE("trailing bytes are ignored") {
    const auto img = read_pgm(bytes_of("P5 1 1 255\n", {9, 1, 2, 3}));
    CHECK(img.size() == 1);
    CHECK(img[0] == 9);
  }
  SUBCASE("maxval below 255 is accepted") {
    CHECK(read_pgm(bytes_of("P5 1 1 15\n", {15}))[0] == 15);
  }
}

TEST_CASE("read_pgm errors") {
  CHECK(code_of([] { read_pgm(bytes_of("P6 1 1 255\n", {1, 2, 3})); }) == Errc::bad_magic);
  CHECK(code_of([] { read_pgm(bytes_of("P2 1 1 255\n7\n")); }) == Errc::bad_magic);
  CHECK(code_of([] { read_pgm(Bytes{}); }) == Errc::bad_magic);
  CHECK(code_of([] { read_pgm(bytes_of("P5 x 1 255\n", {1})); }) == Errc::bad_header);
  CHECK(code_of([] { read_pgm(bytes_of("P5 0 1 255\n")); }) == Errc::bad_header);
  CHECK(code_of([] { read_pgm(bytes_of("P5 1 1 0\n", {0})); }) == Errc::bad_header);
  CHECK(code_of([] { read_pgm(bytes_of("P5 1 1 65535\n", {0, 0})); }) == Errc::bad_header);
  CHECK(code_of([] { read_pgm(bytes_of("P5 1 1")); }) == Errc::bad_header);
  CHECK(code_of([] { read_pgm(bytes_of("P5 2 2 255\n", {1, 2, 3})); }) == Errc::truncated);
}

TEST_CASE("write_pgm layout") {
  const auto out = write_pgm(GrayImage(1, 1, std::vector<std::uint8_t>{0}));
  CHECK(out == bytes_of("P5\n1 1\n255\n", {0}));
  const auto two = write_pgm(GrayImage(2, 1, std::vector<std::uint8_t>{10, 20}));
  CHECK(two == bytes_of("P5\n2 1\n255\n", {10, 20}));
}

TEST_CASE("PGM round trip on random images") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> dim(1, 40), px(0, 255);
  for (int trial = 0; trial < 50; ++trial) {
    GrayImage img(dim(rng), dim(rng));
    for (auto &p : img.pixels())
      p = static_cast<std::uint8_t>(px(rng));
    CHECK(read_pgm(write_pgm(img)) == img);
  }
}

TEST_CASE("raster invariants") {
  CHECK_THROWS_AS(GrayImage(0, 3), Error);
  CHECK_THROWS_AS(GrayImage(2, 2, std::vector<std::uint8_t>{1, 2, 3}), Error);
  CHECK_THROWS_AS(FloatImage(1, 1, std::vector<double>{std::nan("")}), Error);
}

TEST_CASE("LabelMap compacts labels") {
  const LabelMap m(3, 1, {7, 0, 3});
  CHECK(m.max_label() == 2);
  CHECK(m[0] == 2);
  CHECK(m[1] == 0);
  CHECK(m[2] == 1);
  CHECK(LabelMap(2, 1, {0, 0}).max_label() == 0);
}

TEST_CASE("write_ppm_overlay") {
  const GrayImage img(2, 1, std::vector<std::uint8_t>{50, 60});
  const auto palette = std::vector<Rgb>{{0, 0, 0}, {255, 0, 0}};

  SUBCASE("background passes through") {
    const auto ppm = read_ppm(write_ppm_overlay(img, LabelMap(2, 1), palette));
    CHECK(ppm.pixels[0] == Rgb{50, 50, 50});
    CHECK(ppm.pixels[1] == Rgb{60, 60, 60});
  }
  SUBCASE("labelled pixel takes palette colour") {
    const auto bytes = write_ppm_overlay(img, LabelMap(2, 1, {0, 1}), palette);
    const std::string header = "P6\n2 1\n255\n";
    CHECK(std::string(bytes.begin(), bytes.begin() + header.size()) == header);
    const auto ppm = read_ppm(bytes);
    CHECK(ppm.pixels[1] == Rgb{255, 0, 0});
  }
  SUBCASE("errors") {
    CHECK(code_of([&] { write_ppm_overlay(img, LabelMap(1, 2), palette); }) ==
          Errc::dimension_mismatch);
    CHECK(code_of([&] { write_ppm_overlay(img, LabelMap(2, 1, {1, 2}), palette); }) ==
          Errc::palette_too_small);
  }
}
