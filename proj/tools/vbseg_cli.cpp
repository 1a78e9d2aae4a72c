// Command-line front end: segment, phantom, bench.

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "vbseg/config.hpp"
#include "vbseg/phantom.hpp"
#include "vbseg/pipeline.hpp"

namespace fs = std::filesystem;
using namespace vbseg;

namespace {

constexpr int kExitInput = 2;
constexpr int kExitDegenerate = 3;
constexpr int kExitConfig = 4;

int exit_code_for(Errc code) {
  switch (code) {
  case Errc::degenerate_data:
  case Errc::single_class:
  case Errc::empty_mask:
    return kExitDegenerate;
  case Errc::config:
  case Errc::index_out_of_range:
    return kExitConfig;
  default:
    return kExitInput;
  }
}

PipelineConfig config_from(const std::string &path) {
  return path.empty() ? PipelineConfig{} : load_config(path);
}

void write_text(const fs::path &path, const std::string &text) {
  write_file(path.string(), std::span(reinterpret_cast<const std::uint8_t *>(text.data()), text.size()));
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Vertebral body segmentation with fuzzy C-means and baseline methods"};
  app.require_subcommand(1);

  std::string input, truth_path, method_name = "fcm", config_path, out_dir;
  auto *segment = app.add_subcommand("segment", "Segment and label one PGM image");
  segment->add_option("input", input, "Input binary PGM")->required();
  segment->add_option("--truth", truth_path, "Ground-truth mask PGM (nonzero = foreground)");
  segment->add_option("--method", method_name, "fcm, kmeans or otsu")
      ->check(CLI::IsMember({"fcm", "kmeans", "otsu"}));
  segment->add_option("--config", config_path, "key = value configuration file");
  segment->add_option("--out", out_dir, "Output directory (overrides output_dir)");

  PhantomSpec spec;
  std::string phantom_out = ".";
  auto *phantom = app.add_subcommand("phantom", "Write a synthetic slice and its truth mask");
  phantom->add_option("--seed", spec.seed, "Random seed");
  phantom->add_option("--bodies", spec.num_bodies, "Number of vertebral bodies (1-7)");
  phantom->add_option("--noise", spec.noise_sigma, "Gaussian noise sigma");
  phantom->add_option("--bias", spec.bias_amplitude, "Bias field amplitude");
  phantom->add_option("--width", spec.width, "Canvas width");
  phantom->add_option("--height", spec.height, "Canvas height");
  phantom->add_option("--out", phantom_out, "Output directory");

  std::string manifest;
  auto *bench = app.add_subcommand("bench", "Benchmark all configured methods over a manifest");
  bench->add_option("--manifest", manifest, "Lines of image_path,truth_path")->required();
  bench->add_option("--config", config_path, "key = value configuration file");
  bench->add_option("--out", out_dir, "Output directory (overrides output_dir)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (*segment) {
      const PipelineConfig cfg = config_from(config_path);
      const fs::path dir = out_dir.empty() ? fs::path(cfg.output_dir) : fs::path(out_dir);
      const GrayImage img = read_pgm(read_file(input));
      std::optional<BinaryMask> truth;
      if (!truth_path.empty())
        truth = gray_to_mask(read_pgm(read_file(truth_path)));
      const Method method = parse_method(method_name);
      const auto result = run_pipeline(img, truth, cfg, method);
      const std::string stem = file_stem(input);
      write_artifacts(result, img, stem, dir);
      const std::string report = seg_report_header() + seg_report_row(result.report);
      if (truth)
        write_text(dir / (stem + "." + method_name + ".report.csv"), report);
      std::cout << report;
      for (const auto &[id, name] : result.morphology.names)
        std::cout << "# label " << id << " = " << to_string(name) << "\n";
    } else if (*phantom) {
      const Phantom p = generate_phantom(spec);
      fs::create_directories(phantom_out);
      const std::string stem = "phantom_" + std::to_string(spec.seed);
      write_file((fs::path(phantom_out) / (stem + ".pgm")).string(), write_pgm(p.image));
      write_file((fs::path(phantom_out) / (stem + ".truth.pgm")).string(),
                 write_pgm(mask_to_gray(p.truth)));
      std::cout << (fs::path(phantom_out) / (stem + ".pgm")).string() << ","
                << (fs::path(phantom_out) / (stem + ".truth.pgm")).string() << "\n";
    } else if (*bench) {
      const PipelineConfig cfg = config_from(config_path);
      const fs::path dir = out_dir.empty() ? fs::path(cfg.output_dir) : fs::path(out_dir);
      const auto result = run_bench_command(manifest, cfg, dir);
      for (const char *metric : {"dice", "hausdorff", "seconds"})
        std::cout << "[" << metric << "]\n" << summary_csv(result, metric);
    }
  } catch (const Error &e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const fs::filesystem_error &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return 0;
}
