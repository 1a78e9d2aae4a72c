#include "vbseg/pipeline.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "vbseg/clustering.hpp"
#include "vbseg/diffusion.hpp"

namespace vbseg {

namespace {

BinaryMask segment_step(const GrayImage &enhanced, const PipelineConfig &cfg, Method method) {
  switch (method) {
  case Method::otsu:
    return threshold_mask(enhanced, otsu_threshold(enhanced));
  case Method::kmeans: {
    const auto data = intensities(enhanced);
    const auto fit = kmeans_fit(data, cfg.kmeans_clusters, cfg.kmeans_max_iterations, cfg.kmeans_seed);
    const auto cluster = select_vertebra_cluster(fit.centers, cfg.selection);
    return mask_from_assignment(fit.assignment, cluster, enhanced.width(), enhanced.height());
  }
  case Method::fcm: {
    const auto data = intensities(enhanced);
    const auto fit = fcm_fit(data, cfg.fcm);
    const auto cluster = select_vertebra_cluster(fit.model.centers, cfg.selection);
    return mask_from_assignment(defuzzify(fit.memberships), cluster, enhanced.width(),
                                enhanced.height());
  }
  }
  throw Error(Errc::invalid_argument, "unknown method");
}

double hausdorff_or_penalty(const BinaryMask &pred, const BinaryMask &truth) {
  const bool pred_empty = count_foreground(pred) == 0;
  const bool truth_empty = count_foreground(truth) == 0;
  if (pred_empty && truth_empty)
    return 0.0;
  if (pred_empty || truth_empty) {
    const double dw = static_cast<double>(pred.width() - 1);
    const double dh = static_cast<double>(pred.height() - 1);
    return std::sqrt(dw * dw + dh * dh);
  }
  return hausdorff(pred, truth);
}

void write_text(const std::filesystem::path &path, const std::string &text) {
  write_file(path.string(), std::span(reinterpret_cast<const std::uint8_t *>(text.data()), text.size()));
}

} // namespace

PipelineResult run_pipeline(const GrayImage &img, const std::optional<BinaryMask> &truth,
                            const PipelineConfig &cfg, Method method) {
  cfg.validate();
  if (truth && !truth->same_shape(img))
    throw Error(Errc::dimension_mismatch, "truth mask and image differ in size");

  GrayImage enhanced = quantize(diffuse(img, cfg.diffusion));
  auto [cluster_mask, elapsed] = time_call([&] { return segment_step(enhanced, cfg, method); });
  MorphologyResult morph = run_morphology(cluster_mask, cfg.morpho);
  BinaryMask segmentation = foreground(morph.labels);

  SegReport report;
  report.method = method;
  report.elapsed_seconds = elapsed;
  if (truth) {
    report.dice = dice(segmentation, *truth);
    report.hausdorff = hausdorff_or_penalty(segmentation, *truth);
  }
  return {report, std::move(enhanced), std::move(cluster_mask), std::move(morph),
          std::move(segmentation)};
}

void write_artifacts(const PipelineResult &result, const GrayImage &input,
                     const std::string &stem, const std::filesystem::path &dir) {
  std::filesystem::create_directories(dir);
  const std::string base = stem + "." + to_string(result.report.method);
  write_file((dir / (base + ".mask.pgm")).string(), write_pgm(mask_to_gray(result.segmentation)));
  write_file((dir / (base + ".labels.pgm")).string(),
             write_pgm(labels_to_gray(result.morphology.labels)));
  const auto palette = default_palette(result.morphology.labels.max_label() + 1);
  write_file((dir / (base + ".overlay.ppm")).string(),
             write_ppm_overlay(input, result.morphology.labels, palette));
  write_text(dir / (base + ".components.csv"),
             components_csv(result.morphology.components, result.morphology.names));
}

BenchmarkResult run_benchmark(const std::vector<BenchInput> &inputs, const PipelineConfig &cfg,
                              const std::optional<std::filesystem::path> &artifact_dir) {
  if (inputs.empty())
    throw Error(Errc::empty_input, "benchmark needs at least one input");
  cfg.validate();
  BenchmarkResult out;
  for (const auto &in : inputs) {
    for (const Method m : cfg.methods) {
      const auto result = run_pipeline(in.image, in.truth, cfg, m);
      if (artifact_dir)
        write_artifacts(result, in.image, in.stem, *artifact_dir);
      out.runs.push_back({in.stem, result.report});
    }
  }
  for (const Method m : cfg.methods) {
    std::vector<double> d, hd, t;
    for (const auto &run : out.runs) {
      if (run.report.method != m)
        continue;
      d.push_back(*run.report.dice);
      hd.push_back(*run.report.hausdorff);
      t.push_back(run.report.elapsed_seconds);
    }
    out.summaries.push_back({m, summarize(d), summarize(hd), summarize(t)});
  }
  return out;
}

std::string benchmark_csv(const BenchmarkResult &result) {
  std::string out = "image," + seg_report_header();
  for (const auto &run : result.runs)
    out += run.stem + "," + seg_report_row(run.report);
  return out;
}

std::string summary_csv(const BenchmarkResult &result, const std::string &metric) {
  std::string out = summary_header();
  for (const auto &s : result.summaries) {
    const StatsSummary *stats = nullptr;
    if (metric == "dice")
      stats = &s.dice;
    else if (metric == "hausdorff")
      stats = &s.hausdorff;
    else if (metric == "seconds")
      stats = &s.seconds;
    else
      throw Error(Errc::invalid_argument, "unknown summary metric '" + metric + "'");
    out += summary_row(to_string(s.method), *stats);
  }
  return out;
}

std::string file_stem(const std::filesystem::path &path) {
  std::string name = path.filename().string();
  if (const auto dot = name.find('.'); dot != std::string::npos && dot > 0)
    name.erase(dot);
  return name;
}

std::vector<BenchInput> load_manifest(const std::filesystem::path &manifest) {
  const Bytes bytes = read_file(manifest.string());
  std::istringstream in(std::string(bytes.begin(), bytes.end()));
  const auto base = manifest.parent_path();
  auto resolve = [&](std::string p) {
    std::filesystem::path path(p);
    return path.is_absolute() ? path : base / path;
  };
  auto trim = [](std::string s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos)
      return std::string();
    return s.substr(first, s.find_last_not_of(" \t\r") - first + 1);
  };

  std::vector<BenchInput> inputs;
  std::string line;
  while (std::getline(in, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    line = trim(line);
    if (line.empty())
      continue;
    const auto comma = line.find(',');
    const std::string image_path = trim(line.substr(0, comma));
    const std::string truth_path = comma == std::string::npos ? "" : trim(line.substr(comma + 1));
    if (truth_path.empty())
      throw Error(Errc::missing_truth, "manifest entry '" + image_path + "' has no truth mask");
    const auto image_file = resolve(image_path);
    GrayImage image = read_pgm(read_file(image_file.string()));
    BinaryMask truth = gray_to_mask(read_pgm(read_file(resolve(truth_path).string())));
    if (!truth.same_shape(image))
      throw Error(Errc::dimension_mismatch, "truth for '" + image_path + "' differs in size");
    inputs.push_back({file_stem(image_file), std::move(image), std::move(truth)});
  }
  if (inputs.empty())
    throw Error(Errc::empty_input, "manifest lists no images");
  return inputs;
}

BenchmarkResult run_bench_command(const std::filesystem::path &manifest,
                                  const PipelineConfig &cfg,
                                  const std::filesystem::path &out_dir) {
  const auto inputs = load_manifest(manifest);
  std::filesystem::create_directories(out_dir);
  auto result = run_benchmark(inputs, cfg, out_dir);
  write_text(out_dir / "benchmark.csv", benchmark_csv(result));
  for (const char *metric : {"dice", "hausdorff", "seconds"})
    write_text(out_dir / (std::string("summary_") + metric + ".csv"), summary_csv(result, metric));
  return result;
}

} // namespace vbseg
