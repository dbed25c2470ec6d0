#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace trendvol {

enum class ErrorCode {
  invalid_config,
  invalid_series,
  non_positive_price,
  empty_intersection,
  misaligned_series,
  degenerate_window,
  series_too_short,
  degree_too_low,
  wrong_kind,
  parse_error,
  unordered_dates,
  duplicate_date,
  io_error,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Single exception type for every library failure. `location()` carries the
/// sample index for in-memory data or the 1-based line number for file input.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string message,
        std::optional<std::size_t> location = std::nullopt);

  ErrorCode code() const noexcept { return code_; }
  std::optional<std::size_t> location() const noexcept { return location_; }

 private:
  ErrorCode code_;
  std::optional<std::size_t> location_;
};

}  // namespace trendvol
