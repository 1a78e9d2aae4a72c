#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <set>

#include "vbseg/config.hpp"
#include "vbseg/phantom.hpp"
#include "vbseg/pipeline.hpp"

using namespace vbseg;
namespace fs = std::filesystem;

namespace {
fs::path scratch(const std::string &name) {
  const auto dir = fs::temp_directory_path() / ("vbseg_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path &p) {
  const auto b = read_file(p.string());
  return {b.begin(), b.end()};
}
} // namespace

TEST_CASE("config parsing") {
  SUBCASE("empty text gives defaults") {
    const auto cfg = parse_config("");
    CHECK(cfg.fcm.num_clusters == 3);
    CHECK(cfg.fcm.fuzzifier == 2.0);
    CHECK(cfg.fcm.epsilon == 1e-3);
    CHECK(cfg.fcm.max_iterations == 100);
    CHECK(cfg.diffusion.iterations == 10);
    CHECK(cfg.diffusion.kappa == 15.0);
    CHECK(cfg.diffusion.step == 0.25);
    CHECK(cfg.morpho.erosion_iterations == 1);
    CHECK(cfg.morpho.min_area_fraction == 0.005);
    CHECK(cfg.morpho.aspect_low == 1.5);
    CHECK(cfg.morpho.aspect_high == 2.0);
    CHECK(cfg.morpho.connectivity == Connectivity::eight);
    CHECK(cfg.methods.size() == 3);
  }
  SUBCASE("values, comments, whitespace") {
    const auto cfg = parse_config("# tuned\n fcm.clusters = 4 \nmethods = fcm, otsu # two\n"
                                  "morpho.connectivity=4\nselection = 2\n\n");
    CHECK(cfg.fcm.num_clusters == 4);
    CHECK(cfg.methods == std::vector<Method>{Method::fcm, Method::otsu});
    CHECK(cfg.morpho.connectivity == Connectivity::four);
    CHECK(cfg.selection.kind == SelectionPolicy::Kind::explicit_index);
    CHECK(cfg.selection.index == 2);
  }
  SUBCASE("errors are config errors") {
    for (const char *bad : {"fcm.clusters = 1", "fcm.clusters = 9", "fcm.fuzzifier = 1",
                            "fcm.epsilon = 1.5", "diffusion.step = 0.5", "methods = ",
                            "methods = snake", "nonsense = 3", "fcm.clusters = three",
                            "morpho.aspect_low = 3", "morpho.connectivity = 6", "justakey",
                            "selection = 7"}) {
      try {
        parse_config(bad);
        FAIL("accepted: " << bad);
      } catch (const Error &e) {
        CHECK_MESSAGE(e.code() == Errc::config, bad);
      }
    }
  }
}

TEST_CASE("phantom construction") {
  SUBCASE("clean phantom has three plateaus and five bodies") {
    const auto p = generate_phantom({});
    std::set<int> levels(p.image.pixels().begin(), p.image.pixels().end());
    CHECK(levels == std::set<int>{40, 120, 190});
    const auto lab = connected_components(p.truth, Connectivity::eight);
    CHECK(lab.components.size() == 5);
    for (const auto &c : lab.components) {
      CHECK(c.aspect_ratio >= 1.5);
      CHECK(c.aspect_ratio <= 2.0);
    }
    REQUIRE(p.names.size() == 5);
    CHECK(p.names.front() == VertebraName::L5);
    CHECK(p.names.back() == VertebraName::L1);
  }
  SUBCASE("same seed, same image") {
    PhantomSpec s;
    s.noise_sigma = 12;
    s.bias_amplitude = 0.3;
    s.seed = 42;
    CHECK(generate_phantom(s).image == generate_phantom(s).image);
    s.seed = 43;
    PhantomSpec t = s;
    t.seed = 42;
    CHECK(!(generate_phantom(s).image == generate_phantom(t).image));
  }
  SUBCASE("overflow") {
    PhantomSpec s;
    s.num_bodies = 7;
    try {
      generate_phantom(s);
      FAIL("expected SpecOverflow");
    } catch (const Error &e) {
      CHECK(e.code() == Errc::spec_overflow);
    }
    PhantomSpec narrow;
    narrow.width = 80;
    CHECK_THROWS_AS(generate_phantom(narrow), Error);
  }
}

TEST_CASE("run_pipeline on the clean phantom") {
  const auto p = generate_phantom({});
  const PipelineConfig cfg;
  const auto res = run_pipeline(p.image, p.truth, cfg, Method::fcm);
  CHECK(res.morphology.names.size() == 5);
  CHECK(*res.report.dice >= 0.95);
  CHECK(res.report.elapsed_seconds >= 0.0);

  const auto km = run_pipeline(p.image, p.truth, cfg, Method::kmeans);
  CHECK(km.report.method == Method::kmeans);
  CHECK(km.report.dice.has_value());
  CHECK(km.report.hausdorff.has_value());

  const auto no_truth = run_pipeline(p.image, std::nullopt, cfg, Method::fcm);
  CHECK(!no_truth.report.dice);
  CHECK(no_truth.segmentation == res.segmentation);
}

TEST_CASE("run_pipeline surfaces precondition errors") {
  const GrayImage flat(32, 32, 77);
  try {
    run_pipeline(flat, std::nullopt, {}, Method::otsu);
    FAIL("expected SingleClass");
  } catch (const Error &e) {
    CHECK(e.code() == Errc::single_class);
  }
  try {
    run_pipeline(flat, std::nullopt, {}, Method::fcm);
    FAIL("expected DegenerateData");
  } catch (const Error &e) {
    CHECK(e.code() == Errc::degenerate_data);
  }
  CHECK_THROWS_AS(run_pipeline(flat, BinaryMask(8, 8), {}, Method::fcm), Error);
}

TEST_CASE("noisy phantom Dice floor") {
  const PipelineConfig cfg;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    PhantomSpec s;
    s.noise_sigma = 12;
    s.bias_amplitude = 0.3;
    s.seed = seed;
    const auto p = generate_phantom(s);
    CHECK_MESSAGE(*run_pipeline(p.image, p.truth, cfg, Method::fcm).report.dice >= 0.85, seed);
  }
}

TEST_CASE("artifacts are written and re-readable") {
  const auto dir = scratch("artifacts");
  const auto p = generate_phantom({});
  const auto res = run_pipeline(p.image, p.truth, {}, Method::fcm);
  write_artifacts(res, p.image, "clean", dir);

  const auto mask = gray_to_mask(read_pgm(read_file((dir / "clean.fcm.mask.pgm").string())));
  CHECK(mask == res.segmentation);
  const auto labels = read_pgm(read_file((dir / "clean.fcm.labels.pgm").string()));
  for (std::size_t i = 0; i < labels.size(); ++i)
    REQUIRE(labels[i] == res.morphology.labels[i]);
  const auto overlay = read_ppm(read_file((dir / "clean.fcm.overlay.ppm").string()));
  CHECK(overlay.width == p.image.width());
  const auto csv = slurp(dir / "clean.fcm.components.csv");
  CHECK(csv.find(",L5,") != std::string::npos);
  CHECK(csv.find(",L1,") != std::string::npos);
}

TEST_CASE("benchmark shape and manifest handling") {
  const auto dir = scratch("bench");
  std::ofstream manifest(dir / "list.txt");
  manifest << "# image,truth\n";
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    PhantomSpec s;
    s.noise_sigma = 8;
    s.bias_amplitude = 0.2;
    s.seed = seed;
    const auto p = generate_phantom(s);
    const std::string stem = "p" + std::to_string(seed);
    write_file((dir / (stem + ".pgm")).string(), write_pgm(p.image));
    write_file((dir / (stem + ".truth.pgm")).string(), write_pgm(mask_to_gray(p.truth)));
    manifest << stem << ".pgm, " << stem << ".truth.pgm\n";
  }
  manifest.close();

  const auto result = run_bench_command(dir / "list.txt", {}, dir / "out");
  CHECK(result.runs.size() == 9);
  REQUIRE(result.summaries.size() == 3);
  for (const auto &s : result.summaries) {
    CHECK(s.dice.n == 3);
    CHECK(std::abs(s.dice.sem - s.dice.sd / std::sqrt(3.0)) < 1e-12);
  }
  const auto table = slurp(dir / "out" / "summary_dice.csv");
  CHECK(table.rfind("label,n,mean,sd,sem\notsu,3,", 0) == 0);
  CHECK(slurp(dir / "out" / "benchmark.csv").rfind("image,method,dice,hausdorff,elapsed_seconds\np1,otsu,", 0) == 0);
  CHECK(fs::exists(dir / "out" / "p2.kmeans.overlay.ppm"));

  std::ofstream(dir / "missing.txt") << "p1.pgm\n";
  try {
    load_manifest(dir / "missing.txt");
    FAIL("expected MissingTruth");
  } catch (const Error &e) {
    CHECK(e.code() == Errc::missing_truth);
  }
  std::ofstream(dir / "empty.txt") << "# nothing\n";
  CHECK_THROWS_AS(load_manifest(dir / "empty.txt"), Error);
  CHECK_THROWS_AS(run_benchmark({}, {}), Error);
}
