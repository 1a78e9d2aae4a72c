#pragma once

#include <string>
#include <vector>

#include "vbseg/clustering.hpp"
#include "vbseg/diffusion.hpp"
#include "vbseg/metrics.hpp"
#include "vbseg/morphology.hpp"

namespace vbseg {

struct PipelineConfig {
  DiffusionParams diffusion;
  FcmParams fcm;
  std::size_t kmeans_clusters = 3;
  int kmeans_max_iterations = 100;
  std::uint64_t kmeans_seed = 0;
  MorphoParams morpho;
  std::vector<Method> methods{Method::otsu, Method::kmeans, Method::fcm};
  std::string output_dir = ".";
  SelectionPolicy selection;

  /// Throws Errc::config when any nested invariant fails.
  void validate() const;
};

/**
 * Parses flat `key = value` text. Blank lines and `#` comments are ignored,
 * every key is optional, and unknown keys are rejected.
 *
 * Keys: diffusion.iterations, diffusion.kappa, diffusion.step,
 * fcm.clusters, fcm.fuzzifier, fcm.epsilon, fcm.max_iterations, fcm.seed,
 * kmeans.clusters, kmeans.max_iterations, kmeans.seed,
 * morpho.erosion_iterations, morpho.min_area_fraction, morpho.aspect_low,
 * morpho.aspect_high, morpho.connectivity, methods (comma list),
 * output_dir, selection (`brightest` or a cluster index).
 */
PipelineConfig parse_config(const std::string &text);
PipelineConfig load_config(const std::string &path);

} // namespace vbseg
