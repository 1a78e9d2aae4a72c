#include "vbseg/morphology.hpp"

#include <algorithm>
#include <cstdio>
#include <deque>

namespace vbseg {

const char *to_string(VertebraName name) {
  switch (name) {
  case VertebraName::L1: return "L1";
  case VertebraName::L2: return "L2";
  case VertebraName::L3: return "L3";
  case VertebraName::L4: return "L4";
  case VertebraName::L5: return "L5";
  }
  return "";
}

void MorphoParams::validate() const {
  if (erosion_iterations < 0)
    throw Error(Errc::invalid_argument, "erosion_iterations must be >= 0");
  if (!(min_area_fraction >= 0.0 && min_area_fraction < 1.0))
    throw Error(Errc::invalid_argument, "min_area_fraction must be in [0, 1)");
  if (!(aspect_low > 0.0 && aspect_low < aspect_high))
    throw Error(Errc::invalid_argument, "need 0 < aspect_low < aspect_high");
  if (connectivity != Connectivity::four && connectivity != Connectivity::eight)
    throw Error(Errc::invalid_argument, "connectivity must be 4 or 8");
}

BinaryMask fill_holes(const BinaryMask &mask) {
  const std::size_t w = mask.width();
  const std::size_t h = mask.height();
  std::vector<std::uint8_t> outside(mask.size(), 0);
  std::deque<std::size_t> queue;
  auto seed = [&](std::size_t r, std::size_t c) {
    const std::size_t i = r * w + c;
    if (!mask[i] && !outside[i]) {
      outside[i] = 1;
      queue.push_back(i);
    }
  };
  for (std::size_t c = 0; c < w; ++c) {
    seed(0, c);
    seed(h - 1, c);
  }
  for (std::size_t r = 0; r < h; ++r) {
    seed(r, 0);
    seed(r, w - 1);
  }
  while (!queue.empty()) {
    const std::size_t i = queue.front();
    queue.pop_front();
    const std::size_t r = i / w, c = i % w;
    if (r > 0) seed(r - 1, c);
    if (r + 1 < h) seed(r + 1, c);
    if (c > 0) seed(r, c - 1);
    if (c + 1 < w) seed(r, c + 1);
  }
  BinaryMask out(w, h);
  for (std::size_t i = 0; i < mask.size(); ++i)
    out[i] = outside[i] ? 0 : 1;
  return out;
}

BinaryMask erode(const BinaryMask &mask, int iterations) {
  if (iterations < 0)
    throw Error(Errc::invalid_argument, "erosion iterations must be >= 0");
  const std::size_t w = mask.width();
  const std::size_t h = mask.height();
  BinaryMask cur = mask;
  BinaryMask next(w, h);
  for (int it = 0; it < iterations; ++it) {
    for (std::size_t r = 0; r < h; ++r) {
      for (std::size_t c = 0; c < w; ++c) {
        bool keep = r > 0 && r + 1 < h && c > 0 && c + 1 < w;
        for (std::size_t dr = 0; keep && dr < 3; ++dr)
          for (std::size_t dc = 0; keep && dc < 3; ++dc)
            keep = cur.at(r + dr - 1, c + dc - 1) != 0;
        next.at(r, c) = keep ? 1 : 0;
      }
    }
    std::swap(cur, next);
  }
  return cur;
}

Labeling connected_components(const BinaryMask &mask, Connectivity connectivity) {
  const auto w = static_cast<std::ptrdiff_t>(mask.width());
  const auto h = static_cast<std::ptrdiff_t>(mask.height());
  std::vector<std::uint32_t> labels(mask.size(), 0);
  std::vector<Component> components;
  std::vector<std::size_t> stack;

  static constexpr std::ptrdiff_t off8[8][2] = {{-1, -1}, {-1, 0}, {-1, 1}, {0, -1},
                                                {0, 1},   {1, -1}, {1, 0},  {1, 1}};
  static constexpr std::ptrdiff_t off4[4][2] = {{-1, 0}, {0, -1}, {0, 1}, {1, 0}};
  const bool eight = connectivity == Connectivity::eight;

  for (std::size_t start = 0; start < mask.size(); ++start) {
    if (!mask[start] || labels[start])
      continue;
    Component comp;
    comp.id = static_cast<std::uint32_t>(components.size() + 1);
    comp.bbox = {start / mask.width(), start % mask.width(), start / mask.width(),
                 start % mask.width()};
    double sum_r = 0.0, sum_c = 0.0;
    labels[start] = comp.id;
    stack.assign(1, start);
    while (!stack.empty()) {
      const std::size_t i = stack.back();
      stack.pop_back();
      const auto r = static_cast<std::ptrdiff_t>(i) / w;
      const auto c = static_cast<std::ptrdiff_t>(i) % w;
      ++comp.area;
      sum_r += static_cast<double>(r);
      sum_c += static_cast<double>(c);
      auto &b = comp.bbox;
      b.min_row = std::min(b.min_row, static_cast<std::size_t>(r));
      b.max_row = std::max(b.max_row, static_cast<std::size_t>(r));
      b.min_col = std::min(b.min_col, static_cast<std::size_t>(c));
      b.max_col = std::max(b.max_col, static_cast<std::size_t>(c));
      const std::size_t n_off = eight ? 8 : 4;
      for (std::size_t k = 0; k < n_off; ++k) {
        const auto nr = r + (eight ? off8[k][0] : off4[k][0]);
        const auto nc = c + (eight ? off8[k][1] : off4[k][1]);
        if (nr < 0 || nr >= h || nc < 0 || nc >= w)
          continue;
        const auto ni = static_cast<std::size_t>(nr * w + nc);
        if (mask[ni] && !labels[ni]) {
          labels[ni] = comp.id;
          stack.push_back(ni);
        }
      }
    }
    comp.centroid_row = sum_r / static_cast<double>(comp.area);
    comp.centroid_col = sum_c / static_cast<double>(comp.area);
    comp.aspect_ratio =
        static_cast<double>(comp.bbox.cols()) / static_cast<double>(comp.bbox.rows());
    components.push_back(comp);
  }
  return {LabelMap(mask.width(), mask.height(), std::move(labels)), std::move(components)};
}

std::vector<Component> filter_by_area(const std::vector<Component> &components,
                                      std::size_t image_area, double min_area_fraction) {
  const double min_area = min_area_fraction * static_cast<double>(image_area);
  std::vector<Component> kept;
  std::copy_if(components.begin(), components.end(), std::back_inserter(kept),
               [&](const Component &c) { return static_cast<double>(c.area) >= min_area; });
  return kept;
}

std::vector<Component> filter_by_aspect_ratio(const std::vector<Component> &components,
                                              double low, double high) {
  std::vector<Component> kept;
  std::copy_if(components.begin(), components.end(), std::back_inserter(kept),
               [&](const Component &c) { return c.aspect_ratio >= low && c.aspect_ratio <= high; });
  return kept;
}

namespace {

// Inferior first; ties resolved left to right, then by id.
std::vector<Component> inferior_first(std::vector<Component> components) {
  std::sort(components.begin(), components.end(), [](const Component &a, const Component &b) {
    if (a.centroid_row != b.centroid_row)
      return a.centroid_row > b.centroid_row;
    if (a.centroid_col != b.centroid_col)
      return a.centroid_col < b.centroid_col;
    return a.id < b.id;
  });
  return components;
}

constexpr VertebraName kBottomUp[] = {VertebraName::L5, VertebraName::L4, VertebraName::L3,
                                      VertebraName::L2, VertebraName::L1};

} // namespace

std::map<std::uint32_t, VertebraName> label_vertebrae(const std::vector<Component> &components) {
  std::map<std::uint32_t, VertebraName> names;
  const auto sorted = inferior_first(components);
  for (std::size_t k = 0; k < sorted.size() && k < std::size(kBottomUp); ++k)
    names.emplace(sorted[k].id, kBottomUp[k]);
  return names;
}

MorphologyResult run_morphology(const BinaryMask &mask, const MorphoParams &params) {
  params.validate();
  const BinaryMask filled = fill_holes(mask);
  const BinaryMask eroded = erode(filled, params.erosion_iterations);
  const Labeling labeling = connected_components(eroded, params.connectivity);
  auto kept = filter_by_area(labeling.components, mask.size(), params.min_area_fraction);
  kept = filter_by_aspect_ratio(kept, params.aspect_low, params.aspect_high);
  const auto names = label_vertebrae(kept);

  // Renumber so position in the inferior-first order is the new label.
  const auto ordered = inferior_first(std::move(kept));
  std::vector<std::uint32_t> remap(labeling.components.size() + 1, 0);
  MorphologyResult out{LabelMap(mask.width(), mask.height()), {}, {}};
  for (std::size_t k = 0; k < ordered.size(); ++k) {
    Component c = ordered[k];
    const auto new_id = static_cast<std::uint32_t>(k + 1);
    remap[c.id] = new_id;
    if (auto it = names.find(c.id); it != names.end())
      out.names.emplace(new_id, it->second);
    c.id = new_id;
    out.components.push_back(c);
  }
  std::vector<std::uint32_t> relabeled(mask.size());
  for (std::size_t i = 0; i < mask.size(); ++i)
    relabeled[i] = remap[labeling.labels[i]];
  out.labels = LabelMap(mask.width(), mask.height(), std::move(relabeled));
  return out;
}

BinaryMask foreground(const LabelMap &labels) {
  BinaryMask mask(labels.width(), labels.height());
  for (std::size_t i = 0; i < labels.size(); ++i)
    mask[i] = labels[i] != 0 ? 1 : 0;
  return mask;
}

std::string components_csv(const std::vector<Component> &components,
                           const std::map<std::uint32_t, VertebraName> &names) {
  std::string out =
      "id,name,area,min_row,min_col,max_row,max_col,centroid_row,centroid_col,aspect_ratio\n";
  char line[256];
  for (const auto &c : components) {
    const auto it = names.find(c.id);
    std::snprintf(line, sizeof line, "%u,%s,%zu,%zu,%zu,%zu,%zu,%.6f,%.6f,%.6f\n", c.id,
                  it == names.end() ? "" : to_string(it->second), c.area, c.bbox.min_row,
                  c.bbox.min_col, c.bbox.max_row, c.bbox.max_col, c.centroid_row, c.centroid_col,
                  c.aspect_ratio);
    out += line;
  }
  return out;
}

} // namespace vbseg
