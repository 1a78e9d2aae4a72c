#include "vbseg/clustering.hpp"

#include <algorithm>
#include <string>

namespace vbseg {

std::size_t select_vertebra_cluster(std::span<const double> centers, SelectionPolicy policy) {
  if (centers.empty())
    throw Error(Errc::invalid_argument, "no cluster centers to select from");
  if (policy.kind == SelectionPolicy::Kind::explicit_index) {
    if (policy.index >= centers.size())
      throw Error(Errc::index_out_of_range, "cluster " + std::to_string(policy.index) +
                                                " requested, only " +
                                                std::to_string(centers.size()) + " exist");
    return policy.index;
  }
  return static_cast<std::size_t>(std::max_element(centers.begin(), centers.end()) -
                                  centers.begin());
}

BinaryMask mask_from_assignment(const HardAssignment &assign, std::size_t cluster,
                                std::size_t width, std::size_t height) {
  if (assign.labels.size() != width * height)
    throw Error(Errc::dimension_mismatch, "assignment length does not match raster size");
  BinaryMask mask(width, height);
  for (std::size_t i = 0; i < assign.labels.size(); ++i)
    mask[i] = assign.labels[i] == cluster ? 1 : 0;
  return mask;
}

} // namespace vbseg
