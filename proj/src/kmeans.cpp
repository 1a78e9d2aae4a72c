#include "vbseg/clustering.hpp"

#include <cmath>

namespace vbseg {

namespace {

std::uint32_t nearest(double x, std::span<const double> centers) {
  std::uint32_t best = 0;
  double best_d = std::abs(x - centers[0]);
  for (std::uint32_t j = 1; j < centers.size(); ++j) {
    const double d = std::abs(x - centers[j]);
    if (d < best_d) {
      best_d = d;
      best = j;
    }
  }
  return best;
}

// Returns true when any label changed.
bool assign(std::span<const double> data, std::span<const double> centers,
            std::vector<std::uint32_t> &labels) {
  bool changed = false;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const auto j = nearest(data[i], centers);
    changed |= labels[i] != j;
    labels[i] = j;
  }
  return changed;
}

void update_means(std::span<const double> data, const std::vector<std::uint32_t> &labels,
                  std::vector<double> &centers) {
  std::vector<long double> sum(centers.size(), 0.0L);
  std::vector<std::size_t> count(centers.size(), 0);
  for (std::size_t i = 0; i < data.size(); ++i) {
    sum[labels[i]] += data[i];
    ++count[labels[i]];
  }
  for (std::size_t j = 0; j < centers.size(); ++j)
    if (count[j] > 0)
      centers[j] = static_cast<double>(sum[j] / static_cast<long double>(count[j]));
}

} // namespace

double within_cluster_ss(std::span<const double> data, const HardAssignment &assignment,
                         std::span<const double> centers) {
  if (assignment.labels.size() != data.size())
    throw Error(Errc::dimension_mismatch, "assignment and data differ in length");
  long double total = 0.0L;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const long double d = static_cast<long double>(data[i]) - centers[assignment.labels[i]];
    total += d * d;
  }
  return static_cast<double>(total);
}

KMeansResult kmeans_fit(std::span<const double> data, std::size_t m, int max_iterations,
                        std::uint64_t /*seed*/) {
  if (m < 1)
    throw Error(Errc::invalid_argument, "k-means needs at least one cluster");
  if (max_iterations < 1)
    throw Error(Errc::invalid_argument, "k-means max_iterations must be positive");
  KMeansResult out;
  out.centers = quantile_centers(data, m);
  out.assignment = {std::vector<std::uint32_t>(data.size(), 0), m};
  assign(data, out.centers, out.assignment.labels);
  out.wcss_history.push_back(within_cluster_ss(data, out.assignment, out.centers));

  bool converged = false;
  while (out.iterations_run < max_iterations) {
    update_means(data, out.assignment.labels, out.centers);
    ++out.iterations_run;
    const bool changed = assign(data, out.centers, out.assignment.labels);
    out.wcss_history.push_back(within_cluster_ss(data, out.assignment, out.centers));
    if (!changed) {
      converged = true;
      break;
    }
  }
  if (!converged) {
    // Report the means of the final partition.
    update_means(data, out.assignment.labels, out.centers);
    out.wcss_history.push_back(within_cluster_ss(data, out.assignment, out.centers));
  }
  return out;
}

} // namespace vbseg
