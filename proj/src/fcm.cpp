#include "vbseg/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <string>

namespace vbseg {

void FcmParams::validate() const {
  if (num_clusters < 2)
    throw Error(Errc::invalid_argument, "FCM needs at least two clusters");
  if (!(fuzzifier > 1.0) || !std::isfinite(fuzzifier))
    throw Error(Errc::invalid_argument, "FCM fuzzifier must be > 1");
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw Error(Errc::invalid_argument, "FCM epsilon must be in (0, 1)");
  if (max_iterations < 1)
    throw Error(Errc::invalid_argument, "FCM max_iterations must be positive");
}

namespace {

double membership_weight(double u, double fuzzifier) {
  return fuzzifier == 2.0 ? u * u : std::pow(u, fuzzifier);
}

std::size_t count_distinct(std::span<const double> data) {
  return std::set<double>(data.begin(), data.end()).size();
}

void require_clusterable(std::span<const double> data, std::size_t m) {
  if (data.size() < m || count_distinct(data) < m)
    throw Error(Errc::degenerate_data, "data has fewer than " + std::to_string(m) +
                                           " distinct values");
}

} // namespace

double fcm_objective(std::span<const double> data, const MembershipMatrix &memberships,
                     std::span<const double> centers, double fuzzifier) {
  if (memberships.rows() != data.size() || memberships.cols() != centers.size())
    throw Error(Errc::dimension_mismatch, "objective inputs disagree in size");
  if (!(fuzzifier > 1.0))
    throw Error(Errc::invalid_argument, "fuzzifier must be > 1");
  long double total = 0.0L;
  for (std::size_t i = 0; i < data.size(); ++i) {
    for (std::size_t j = 0; j < centers.size(); ++j) {
      const long double d = static_cast<long double>(data[i]) - centers[j];
      total += static_cast<long double>(membership_weight(memberships(i, j), fuzzifier)) * d * d;
    }
  }
  return static_cast<double>(total);
}

MembershipMatrix fcm_memberships(std::span<const double> data, std::span<const double> centers,
                                 double fuzzifier) {
  const std::size_t m = centers.size();
  MembershipMatrix u(data.size(), m);
  const double exponent = 1.0 / (fuzzifier - 1.0);
  std::vector<double> dist2(m);

  for (std::size_t i = 0; i < data.size(); ++i) {
    auto row = u.row(i);
    double dmin = std::numeric_limits<double>::infinity();
    std::size_t jmin = 0;
    for (std::size_t j = 0; j < m; ++j) {
      const double d = data[i] - centers[j];
      dist2[j] = d * d;
      if (dist2[j] < dmin) {
        dmin = dist2[j];
        jmin = j;
      }
    }
    if (dmin == 0.0) {
      row[jmin] = 1.0;
      continue;
    }
    // Ratios against the nearest center keep every weight in (0, 1].
    double sum = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      const double ratio = dmin / dist2[j];
      row[j] = exponent == 1.0 ? ratio : std::pow(ratio, exponent);
      sum += row[j];
    }
    for (auto &v : row)
      v /= sum;
  }
  return u;
}

std::vector<double> fcm_centers(std::span<const double> data, const MembershipMatrix &memberships,
                                double fuzzifier, std::span<const double> previous) {
  const std::size_t m = memberships.cols();
  std::vector<long double> num(m, 0.0L), den(m, 0.0L);
  for (std::size_t i = 0; i < data.size(); ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const long double w = membership_weight(memberships(i, j), fuzzifier);
      num[j] += w * data[i];
      den[j] += w;
    }
  }
  std::vector<double> centers(m);
  for (std::size_t j = 0; j < m; ++j)
    centers[j] = den[j] > 0.0L ? static_cast<double>(num[j] / den[j]) : previous[j];
  return centers;
}

std::vector<double> quantile_centers(std::span<const double> data, std::size_t m) {
  require_clusterable(data, m);
  std::vector<double> sorted(data.begin(), data.end());
  std::sort(sorted.begin(), sorted.end());
  auto pick = [m](const std::vector<double> &values) {
    std::vector<double> out(m);
    const double n = static_cast<double>(values.size());
    for (std::size_t j = 0; j < m; ++j) {
      auto idx = static_cast<std::size_t>(std::floor((static_cast<double>(j) + 0.5) * n /
                                                     static_cast<double>(m)));
      out[j] = values[std::min(idx, values.size() - 1)];
    }
    return out;
  };
  auto centers = pick(sorted);
  if (std::adjacent_find(centers.begin(), centers.end()) != centers.end()) {
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    centers = pick(sorted);
  }
  return centers;
}

FcmResult fcm_fit(std::span<const double> data, const FcmParams &params) {
  params.validate();
  return fcm_fit(data, params, quantile_centers(data, params.num_clusters));
}

FcmResult fcm_fit(std::span<const double> data, const FcmParams &params,
                  std::vector<double> initial_centers) {
  params.validate();
  require_clusterable(data, params.num_clusters);
  if (initial_centers.size() != params.num_clusters)
    throw Error(Errc::dimension_mismatch, "initial centers do not match num_clusters");

  const double k = params.fuzzifier;
  ClusterModel model;
  model.centers = std::move(initial_centers);
  MembershipMatrix u = fcm_memberships(data, model.centers, k);
  model.objective_history.push_back(fcm_objective(data, u, model.centers, k));

  for (int t = 1; t <= params.max_iterations; ++t) {
    model.centers = fcm_centers(data, u, k, model.centers);
    MembershipMatrix next = fcm_memberships(data, model.centers, k);
    double delta = 0.0;
    for (std::size_t i = 0; i < u.rows(); ++i)
      for (std::size_t j = 0; j < u.cols(); ++j)
        delta = std::max(delta, std::abs(next(i, j) - u(i, j)));
    u = std::move(next);
    model.iterations_run = t;
    model.final_delta = delta;
    model.objective_history.push_back(fcm_objective(data, u, model.centers, k));
    if (delta <= params.epsilon)
      break;
  }
  model.objective = model.objective_history.back();
  return {std::move(u), std::move(model)};
}

HardAssignment defuzzify(const MembershipMatrix &memberships) {
  HardAssignment out{std::vector<std::uint32_t>(memberships.rows()), memberships.cols()};
  for (std::size_t i = 0; i < memberships.rows(); ++i) {
    const auto row = memberships.row(i);
    out.labels[i] = static_cast<std::uint32_t>(std::max_element(row.begin(), row.end()) - row.begin());
  }
  return out;
}

std::vector<double> intensities(const GrayImage &img) {
  return {img.pixels().begin(), img.pixels().end()};
}

} // namespace vbseg
