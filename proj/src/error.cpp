#include "vbseg/error.hpp"

namespace vbseg {

const char *errc_name(Errc code) noexcept {
  switch (code) {
  case Errc::bad_magic: return "BadMagic";
  case Errc::bad_header: return "BadHeader";
  case Errc::truncated: return "Truncated";
  case Errc::dimension_mismatch: return "DimensionMismatch";
  case Errc::palette_too_small: return "PaletteTooSmall";
  case Errc::degenerate_data: return "DegenerateData";
  case Errc::single_class: return "SingleClass";
  case Errc::index_out_of_range: return "IndexOutOfRange";
  case Errc::empty_mask: return "EmptyMask";
  case Errc::empty_input: return "EmptyInput";
  case Errc::spec_overflow: return "SpecOverflow";
  case Errc::missing_truth: return "MissingTruth";
  case Errc::invalid_argument: return "InvalidArgument";
  case Errc::config: return "ConfigError";
  case Errc::io: return "IoError";
  }
  return "Unknown";
}

} // namespace vbseg
