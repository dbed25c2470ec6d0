#pragma once

#include <chrono>
#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "trendvol/error.hpp"

namespace trendvol {

using Date = std::chrono::year_month_day;

enum class Unit { price, log_price, return_per_day, dimensionless };

std::string_view to_string(Unit unit) noexcept;

/// Parses a strict ISO-8601 calendar date (YYYY-MM-DD).
std::optional<Date> parse_date(std::string_view text) noexcept;
std::string format_date(Date date);

/// `count` consecutive calendar days starting at `start`.
std::vector<Date> daily_dates(std::size_t count, Date start = Date{std::chrono::year{2000}, std::chrono::January, std::chrono::day{3}});

/// The next `count` weekdays strictly after `last`.
std::vector<Date> next_weekdays(Date last, std::size_t count);

/// A uniformly indexed scalar time series. Sample spacing is one trading day
/// regardless of calendar gaps. Samples may be undefined (masked); masked
/// samples hold 0.0 and must never be read as data.
///
/// Immutable after construction. The timestamp vector is shared between
/// series derived from one another.
class Series {
 public:
  /// Fully defined series. Throws invalid_series on empty input, unordered
  /// or duplicate timestamps, length mismatch, or non-finite values.
  Series(std::vector<Date> timestamps, std::vector<double> values,
         Unit unit = Unit::price);
  Series(std::vector<Date> timestamps, std::vector<double> values,
         std::vector<bool> defined, Unit unit = Unit::price);

  /// Values on `daily_dates(values.size())`; convenient for synthetic data.
  static Series from_values(std::vector<double> values, Unit unit = Unit::price);

  std::size_t size() const noexcept { return values_.size(); }
  Unit unit() const noexcept { return unit_; }

  std::span<const Date> timestamps() const noexcept { return *timestamps_; }
  std::span<const double> values() const noexcept { return values_; }
  const std::vector<bool>& defined() const noexcept { return defined_; }

  double operator[](std::size_t i) const noexcept { return values_[i]; }
  bool is_defined(std::size_t i) const noexcept { return defined_[i]; }
  std::size_t defined_count() const noexcept;

  bool same_timestamps(const Series& other) const noexcept;

  /// New series on the same timestamps. Undefined entries are zeroed.
  Series derive(std::vector<double> values, std::vector<bool> defined,
                Unit unit) const;
  Series derive(std::vector<double> values, Unit unit) const;

 private:
  Series(std::shared_ptr<const std::vector<Date>> timestamps,
         std::vector<double> values, std::vector<bool> defined, Unit unit);
  void validate_values();

  std::shared_ptr<const std::vector<Date>> timestamps_;
  std::vector<double> values_;
  std::vector<bool> defined_;
  Unit unit_;
};

/// Throws non_positive_price (location = first offending index) if any
/// defined value is <= 0; otherwise returns the series unchanged.
const Series& validate_positive(const Series& series);

struct AlignmentReport {
  std::size_t kept_count = 0;
  std::size_t dropped_left = 0;
  std::size_t dropped_right = 0;
};

struct Aligned {
  Series left;
  Series right;
  AlignmentReport report;
};

/// Restricts both series to their common timestamps, preserving order.
/// Throws empty_intersection when no date is shared.
Aligned align(const Series& left, const Series& right);

/// Throws misaligned_series unless both series share identical timestamps.
void require_aligned(const Series& a, const Series& b);

}  // namespace trendvol
