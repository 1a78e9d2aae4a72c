#include "vbseg/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <vector>

namespace vbseg {

namespace {

void require_same_shape(const BinaryMask &a, const BinaryMask &b) {
  if (!a.same_shape(b))
    throw Error(Errc::dimension_mismatch, "masks differ in size");
}

constexpr std::int64_t kFar = std::numeric_limits<std::int64_t>::max() / 4;

// 1-D squared distance transform of sampled function f (Felzenszwalb &
// Huttenlocher lower envelope of parabolas).
void edt_1d(std::span<const std::int64_t> f, std::span<std::int64_t> out,
            std::vector<std::size_t> &v, std::vector<double> &z) {
  const std::size_t n = f.size();
  v.assign(n, 0);
  z.assign(n + 1, 0.0);
  std::size_t k = 0;
  std::size_t first = n;
  for (std::size_t q = 0; q < n; ++q)
    if (f[q] < kFar) {
      first = q;
      break;
    }
  if (first == n) {
    std::fill(out.begin(), out.end(), kFar);
    return;
  }
  v[0] = first;
  z[0] = -std::numeric_limits<double>::infinity();
  z[1] = std::numeric_limits<double>::infinity();
  auto meet = [&](std::size_t q, std::size_t p) {
    const double fq = static_cast<double>(f[q]) + static_cast<double>(q) * static_cast<double>(q);
    const double fp = static_cast<double>(f[p]) + static_cast<double>(p) * static_cast<double>(p);
    return (fq - fp) / (2.0 * static_cast<double>(q) - 2.0 * static_cast<double>(p));
  };
  for (std::size_t q = first + 1; q < n; ++q) {
    if (f[q] >= kFar)
      continue;
    double s = meet(q, v[k]);
    while (s <= z[k]) {
      --k;
      s = meet(q, v[k]);
    }
    ++k;
    v[k] = q;
    z[k] = s;
    z[k + 1] = std::numeric_limits<double>::infinity();
  }
  k = 0;
  for (std::size_t q = 0; q < n; ++q) {
    while (z[k + 1] < static_cast<double>(q))
      ++k;
    const auto d = static_cast<std::int64_t>(q) - static_cast<std::int64_t>(v[k]);
    out[q] = d * d + f[v[k]];
  }
}

} // namespace

Raster<std::int64_t> squared_distance_transform(const BinaryMask &mask) {
  const std::size_t w = mask.width();
  const std::size_t h = mask.height();
  Raster<std::int64_t> dist(w, h, kFar);
  for (std::size_t i = 0; i < mask.size(); ++i)
    if (mask[i])
      dist[i] = 0;

  std::vector<std::size_t> v;
  std::vector<double> z;
  std::vector<std::int64_t> col(h), col_out(h);
  for (std::size_t c = 0; c < w; ++c) {
    for (std::size_t r = 0; r < h; ++r)
      col[r] = dist.at(r, c);
    edt_1d(col, col_out, v, z);
    for (std::size_t r = 0; r < h; ++r)
      dist.at(r, c) = col_out[r];
  }
  std::vector<std::int64_t> row(w), row_out(w);
  for (std::size_t r = 0; r < h; ++r) {
    for (std::size_t c = 0; c < w; ++c)
      row[c] = dist.at(r, c);
    edt_1d(row, row_out, v, z);
    for (std::size_t c = 0; c < w; ++c)
      dist.at(r, c) = row_out[c];
  }
  return dist;
}

double dice(const BinaryMask &a, const BinaryMask &b) {
  require_same_shape(a, b);
  std::size_t na = 0, nb = 0, both = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    na += a[i] != 0;
    nb += b[i] != 0;
    both += a[i] && b[i];
  }
  if (na + nb == 0)
    return 1.0;
  return 2.0 * static_cast<double>(both) / static_cast<double>(na + nb);
}

double directed_hausdorff(const BinaryMask &a, const BinaryMask &b) {
  require_same_shape(a, b);
  if (count_foreground(a) == 0 || count_foreground(b) == 0)
    throw Error(Errc::empty_mask, "Hausdorff distance needs non-empty masks");
  const auto dist = squared_distance_transform(b);
  std::int64_t worst = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i])
      worst = std::max(worst, dist[i]);
  return std::sqrt(static_cast<double>(worst));
}

double hausdorff(const BinaryMask &a, const BinaryMask &b) {
  return std::max(directed_hausdorff(a, b), directed_hausdorff(b, a));
}

double standard_error(double sd, std::size_t n) {
  return sd / std::sqrt(static_cast<double>(n));
}

StatsSummary summarize(std::span<const double> values) {
  if (values.empty())
    throw Error(Errc::empty_input, "cannot summarize an empty sample");
  // Welford's running update.
  double mean = 0.0;
  double m2 = 0.0;
  std::size_t n = 0;
  for (double x : values) {
    ++n;
    const double delta = x - mean;
    mean += delta / static_cast<double>(n);
    m2 += delta * (x - mean);
  }
  StatsSummary s;
  s.n = n;
  s.mean = mean;
  s.sd = n > 1 ? std::sqrt(std::max(0.0, m2) / static_cast<double>(n - 1)) : 0.0;
  s.sem = standard_error(s.sd, n);
  return s;
}

const char *to_string(Method m) {
  switch (m) {
  case Method::otsu: return "otsu";
  case Method::kmeans: return "kmeans";
  case Method::fcm: return "fcm";
  }
  return "";
}

Method parse_method(const std::string &name) {
  if (name == "otsu") return Method::otsu;
  if (name == "kmeans") return Method::kmeans;
  if (name == "fcm") return Method::fcm;
  throw Error(Errc::invalid_argument, "unknown method '" + name + "'");
}

std::string seg_report_header() { return "method,dice,hausdorff,elapsed_seconds\n"; }

namespace {
std::string format_real(std::optional<double> v, const char *fmt = "%.6f") {
  if (!v)
    return "";
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, *v);
  return buf;
}
} // namespace

std::string seg_report_row(const SegReport &r) {
  return std::string(to_string(r.method)) + "," + format_real(r.dice) + "," +
         format_real(r.hausdorff) + "," + format_real(r.elapsed_seconds, "%.9f") + "\n";
}

std::string summary_header() { return "label,n,mean,sd,sem\n"; }

std::string summary_row(const std::string &label, const StatsSummary &s) {
  return label + "," + std::to_string(s.n) + "," + format_real(s.mean, "%.9g") + "," +
         format_real(s.sd, "%.9g") + "," + format_real(s.sem, "%.9g") + "\n";
}

} // namespace vbseg
