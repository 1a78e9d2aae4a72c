#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "vbseg/raster.hpp"

namespace vbseg {

/// Fuzzy C-means settings. The fuzzifier is the membership exponent and must
/// exceed 1; epsilon bounds the largest membership change between sweeps.
struct FcmParams {
  std::size_t num_clusters = 3;
  double fuzzifier = 2.0;
  double epsilon = 1e-3;
  int max_iterations = 100;
  std::uint64_t seed = 0;

  void validate() const;
};

/// N x M membership degrees, one row per sample. Rows sum to one.
class MembershipMatrix {
public:
  MembershipMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), u_(rows * cols) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  double &operator()(std::size_t i, std::size_t j) { return u_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return u_[i * cols_ + j]; }
  std::span<double> row(std::size_t i) { return {u_.data() + i * cols_, cols_}; }
  std::span<const double> row(std::size_t i) const { return {u_.data() + i * cols_, cols_}; }

private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> u_;
};

struct ClusterModel {
  std::vector<double> centers;
  int iterations_run = 0;
  /// max |u_ij(t+1) - u_ij(t)| of the last sweep.
  double final_delta = 0.0;
  double objective = 0.0;
  /// Objective after initialisation, then after every (centers, memberships) sweep.
  std::vector<double> objective_history;
};

struct FcmResult {
  MembershipMatrix memberships;
  ClusterModel model;
};

struct HardAssignment {
  std::vector<std::uint32_t> labels;
  std::size_t num_clusters = 0;
};

/// Sum over samples and clusters of u^k * (x - v)^2.
double fcm_objective(std::span<const double> data, const MembershipMatrix &memberships,
                     std::span<const double> centers, double fuzzifier);

/// Membership update for fixed centers. A sample sitting exactly on a center
/// belongs to the lowest-index such center with degree one.
MembershipMatrix fcm_memberships(std::span<const double> data, std::span<const double> centers,
                                 double fuzzifier);

/// Weighted-mean center update for fixed memberships. A cluster with zero
/// total weight keeps its previous center.
std::vector<double> fcm_centers(std::span<const double> data, const MembershipMatrix &memberships,
                                double fuzzifier, std::span<const double> previous);

/// Centers at the (j + 0.5) / M quantiles of the data. If duplicates in the
/// data make two quantiles coincide, the quantiles of the distinct values are
/// used instead.
std::vector<double> quantile_centers(std::span<const double> data, std::size_t m);

FcmResult fcm_fit(std::span<const double> data, const FcmParams &params);
/// Same as above but starting from caller-supplied centers.
FcmResult fcm_fit(std::span<const double> data, const FcmParams &params,
                  std::vector<double> initial_centers);

/// Per-row argmax with ties going to the lower index.
HardAssignment defuzzify(const MembershipMatrix &memberships);

struct KMeansResult {
  HardAssignment assignment;
  std::vector<double> centers;
  int iterations_run = 0;
  /// Within-cluster sum of squares after the initial assignment and after
  /// every Lloyd step.
  std::vector<double> wcss_history;
};

/// Lloyd iteration from quantile-initialised centers. The seed is accepted
/// for interface parity; initialisation is deterministic.
KMeansResult kmeans_fit(std::span<const double> data, std::size_t m, int max_iterations,
                        std::uint64_t seed = 0);

double within_cluster_ss(std::span<const double> data, const HardAssignment &assign,
                         std::span<const double> centers);

/// Smallest t in [0,254] maximising the between-class variance of the
/// 256-bin histogram, where the foreground is every pixel > t.
std::uint8_t otsu_threshold(const GrayImage &img);
std::uint8_t otsu_threshold(std::span<const std::uint8_t> pixels);

BinaryMask threshold_mask(const GrayImage &img, std::uint8_t t);

struct SelectionPolicy {
  enum class Kind { brightest, explicit_index };
  Kind kind = Kind::brightest;
  std::size_t index = 0;

  static SelectionPolicy brightest() { return {}; }
  static SelectionPolicy explicit_index(std::size_t i) { return {Kind::explicit_index, i}; }
};

std::size_t select_vertebra_cluster(std::span<const double> centers, SelectionPolicy policy);

BinaryMask mask_from_assignment(const HardAssignment &assign, std::size_t cluster,
                                std::size_t width, std::size_t height);

std::vector<double> intensities(const GrayImage &img);

} // namespace vbseg
