#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "vbseg/config.hpp"
#include "vbseg/metrics.hpp"
#include "vbseg/morphology.hpp"

namespace vbseg {

struct PipelineResult {
  SegReport report;
  GrayImage enhanced;
  /// Raw cluster or threshold mask before morphology.
  BinaryMask cluster_mask;
  MorphologyResult morphology;
  /// Foreground of the final label map.
  BinaryMask segmentation;
};

/// diffuse -> quantize -> method segmentation -> vertebra mask ->
/// morphology. elapsed_seconds covers the method-specific segmentation step.
/// Dice and Hausdorff are filled only when truth is supplied; an empty
/// prediction scores the image diagonal as its Hausdorff distance.
PipelineResult run_pipeline(const GrayImage &img, const std::optional<BinaryMask> &truth,
                            const PipelineConfig &cfg, Method method);

/// Writes <stem>.<method>.{mask.pgm,labels.pgm,overlay.ppm,components.csv}.
void write_artifacts(const PipelineResult &result, const GrayImage &input,
                     const std::string &stem, const std::filesystem::path &dir);

struct BenchInput {
  std::string stem;
  GrayImage image;
  BinaryMask truth;
};

struct BenchRun {
  std::string stem;
  SegReport report;
};

struct MethodSummary {
  Method method;
  StatsSummary dice;
  StatsSummary hausdorff;
  StatsSummary seconds;
};

struct BenchmarkResult {
  std::vector<BenchRun> runs;
  std::vector<MethodSummary> summaries;
};

/// Runs every configured method on every input, serially so timings are
/// comparable. When artifact_dir is set, per-run artifacts are written there.
BenchmarkResult run_benchmark(const std::vector<BenchInput> &inputs, const PipelineConfig &cfg,
                              const std::optional<std::filesystem::path> &artifact_dir = {});

/// Per-run rows: image,method,dice,hausdorff,elapsed_seconds.
std::string benchmark_csv(const BenchmarkResult &result);

/// One label,n,mean,sd,sem table per metric, rows ordered as configured.
std::string summary_csv(const BenchmarkResult &result, const std::string &metric);

/// Manifest lines are `image_path,truth_path`; `#` comments and blank lines
/// are skipped. Relative paths resolve against the manifest's directory.
std::vector<BenchInput> load_manifest(const std::filesystem::path &manifest);

/// Everything behind `bench`: loads the manifest, runs the benchmark, writes
/// artifacts, benchmark.csv and summary_{dice,hausdorff,seconds}.csv.
BenchmarkResult run_bench_command(const std::filesystem::path &manifest,
                                  const PipelineConfig &cfg, const std::filesystem::path &out_dir);

std::string file_stem(const std::filesystem::path &path);

} // namespace vbseg
