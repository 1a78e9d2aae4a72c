#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "vbseg/raster.hpp"

namespace vbseg {

struct BoundingBox {
  std::size_t min_row = 0;
  std::size_t min_col = 0;
  std::size_t max_row = 0;
  std::size_t max_col = 0;

  std::size_t rows() const { return max_row - min_row + 1; }
  std::size_t cols() const { return max_col - min_col + 1; }
};

/// One connected foreground region. aspect_ratio is bbox columns over bbox
/// rows, so a body wider than it is tall scores above one.
struct Component {
  std::uint32_t id = 0;
  std::size_t area = 0;
  BoundingBox bbox;
  double centroid_row = 0.0;
  double centroid_col = 0.0;
  double aspect_ratio = 0.0;
};

enum class VertebraName { L1, L2, L3, L4, L5 };

const char *to_string(VertebraName name);

enum class Connectivity { four = 4, eight = 8 };

struct MorphoParams {
  int erosion_iterations = 1;
  double min_area_fraction = 0.005;
  double aspect_low = 1.5;
  double aspect_high = 2.0;
  Connectivity connectivity = Connectivity::eight;

  void validate() const;
};

/// Background not 4-connected to the border becomes foreground.
BinaryMask fill_holes(const BinaryMask &mask);

/// Erosion by a 3x3 square; pixels outside the image count as background.
BinaryMask erode(const BinaryMask &mask, int iterations);

struct Labeling {
  LabelMap labels;
  std::vector<Component> components;
};

/// Labels regions 1..L in row-major first-encounter order.
Labeling connected_components(const BinaryMask &mask, Connectivity connectivity);

std::vector<Component> filter_by_area(const std::vector<Component> &components,
                                      std::size_t image_area, double min_area_fraction);

/// Keeps low <= aspect_ratio <= high.
std::vector<Component> filter_by_aspect_ratio(const std::vector<Component> &components,
                                              double low, double high);

/// Most inferior (largest centroid row) component becomes L5, then upward to
/// L1. Components past the fifth stay unnamed.
std::map<std::uint32_t, VertebraName> label_vertebrae(const std::vector<Component> &components);

struct MorphologyResult {
  /// Named bodies take L5 = 1 ... L1 = 5; surviving unnamed components follow.
  LabelMap labels;
  std::vector<Component> components;
  std::map<std::uint32_t, VertebraName> names;
};

MorphologyResult run_morphology(const BinaryMask &mask, const MorphoParams &params);

BinaryMask foreground(const LabelMap &labels);

/// CSV with header id,name,area,min_row,min_col,max_row,max_col,centroid_row,centroid_col,aspect_ratio
std::string components_csv(const std::vector<Component> &components,
                           const std::map<std::uint32_t, VertebraName> &names);

} // namespace vbseg
