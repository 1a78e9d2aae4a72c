#pragma once

#include <chrono>
#include <optional>
#include <span>
#include <string>
#include <type_traits>
#include <utility>

#include "vbseg/raster.hpp"

namespace vbseg {

/// 2|A∩B| / (|A|+|B|); two empty masks agree perfectly and score 1.
double dice(const BinaryMask &a, const BinaryMask &b);

/// max over a in A of the Euclidean distance to the nearest pixel of B.
double directed_hausdorff(const BinaryMask &a, const BinaryMask &b);

/// Symmetric Hausdorff distance in pixel units over all foreground pixels.
/// Throws EmptyMask if either mask has no foreground.
double hausdorff(const BinaryMask &a, const BinaryMask &b);

/// Squared Euclidean distance from every pixel to the nearest foreground
/// pixel of the mask (exact, separable lower-envelope transform).
Raster<std::int64_t> squared_distance_transform(const BinaryMask &mask);

struct StatsSummary {
  std::size_t n = 0;
  double mean = 0.0;
  double sd = 0.0;  ///< sample standard deviation, n - 1 denominator
  double sem = 0.0; ///< sd / sqrt(n)
};

double standard_error(double sd, std::size_t n);

/// Throws EmptyInput for an empty sample. sd is 0 for a single value.
StatsSummary summarize(std::span<const double> values);

enum class Method { otsu, kmeans, fcm };

const char *to_string(Method m);
Method parse_method(const std::string &name);

struct SegReport {
  Method method = Method::fcm;
  std::optional<double> dice;
  std::optional<double> hausdorff;
  double elapsed_seconds = 0.0;
};

/// Header "method,dice,hausdorff,elapsed_seconds".
std::string seg_report_header();
std::string seg_report_row(const SegReport &r);

/// Header "label,n,mean,sd,sem".
std::string summary_header();
std::string summary_row(const std::string &label, const StatsSummary &s);

/// Runs fn under the monotonic clock. Returns {result, seconds}, or just the
/// seconds for void callables.
template <typename Fn> auto time_call(Fn &&fn) {
  using clock = std::chrono::steady_clock;
  const auto start = clock::now();
  if constexpr (std::is_void_v<std::invoke_result_t<Fn>>) {
    std::forward<Fn>(fn)();
    return std::chrono::duration<double>(clock::now() - start).count();
  } else {
    auto result = std::forward<Fn>(fn)();
    const double elapsed = std::chrono::duration<double>(clock::now() - start).count();
    return std::pair<decltype(result), double>(std::move(result), elapsed);
  }
}

} // namespace vbseg
