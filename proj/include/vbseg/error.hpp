#pragma once

#include <stdexcept>
#include <string>

namespace vbseg {

enum class Errc {
  bad_magic,
  bad_header,
  truncated,
  dimension_mismatch,
  palette_too_small,
  degenerate_data,
  single_class,
  index_out_of_range,
  empty_mask,
  empty_input,
  spec_overflow,
  missing_truth,
  invalid_argument,
  config,
  io,
};

const char *errc_name(Errc code) noexcept;

/// Every failure raised by the library carries one of the codes above so the
/// CLI can map it onto an exit status.
class Error : public std::runtime_error {
public:
  Error(Errc code, const std::string &what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what),
        code_(code) {}

  Errc code() const noexcept { return code_; }

private:
  Errc code_;
};

} // namespace vbseg
