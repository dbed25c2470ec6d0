#include "trendvol/series.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <utility>

namespace trendvol {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::invalid_config: return "InvalidConfig";
    case ErrorCode::invalid_series: return "InvalidSeries";
    case ErrorCode::non_positive_price: return "NonPositivePrice";
    case ErrorCode::empty_intersection: return "EmptyIntersection";
    case ErrorCode::misaligned_series: return "MisalignedSeries";
    case ErrorCode::degenerate_window: return "DegenerateWindow";
    case ErrorCode::series_too_short: return "SeriesTooShort";
    case ErrorCode::degree_too_low: return "DegreeTooLow";
    case ErrorCode::wrong_kind: return "WrongKind";
    case ErrorCode::parse_error: return "ParseError";
    case ErrorCode::unordered_dates: return "UnorderedDates";
    case ErrorCode::duplicate_date: return "DuplicateDate";
    case ErrorCode::io_error: return "IoError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, std::string message,
             std::optional<std::size_t> location)
    : std::runtime_error(std::move(message)), code_(code), location_(location) {}

std::string_view to_string(Unit unit) noexcept {
  switch (unit) {
    case Unit::price: return "price";
    case Unit::log_price: return "log-price";
    case Unit::return_per_day: return "return-per-day";
    case Unit::dimensionless: return "dimensionless";
  }
  return "unknown";
}

std::optional<Date> parse_date(std::string_view text) noexcept {
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
  auto field = [&](std::size_t pos, std::size_t len) -> std::optional<int> {
    int v = 0;
    for (std::size_t i = pos; i < pos + len; ++i) {
      if (text[i] < '0' || text[i] > '9') return std::nullopt;
      v = v * 10 + (text[i] - '0');
    }
    return v;
  };
  auto y = field(0, 4), m = field(5, 2), d = field(8, 2);
  if (!y || !m || !d) return std::nullopt;
  Date date{std::chrono::year{*y}, std::chrono::month{static_cast<unsigned>(*m)},
            std::chrono::day{static_cast<unsigned>(*d)}};
  if (!date.ok()) return std::nullopt;
  return date;
}

std::string format_date(Date date) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(date.year()),
                static_cast<unsigned>(date.month()), static_cast<unsigned>(date.day()));
  return buf;
}

std::vector<Date> daily_dates(std::size_t count, Date start) {
  std::vector<Date> out;
  out.reserve(count);
  const std::chrono::sys_days first{start};
  for (std::size_t i = 0; i < count; ++i)
    out.emplace_back(first + std::chrono::days{static_cast<long>(i)});
  return out;
}

std::vector<Date> next_weekdays(Date last, std::size_t count) {
  std::vector<Date> out;
  out.reserve(count);
  std::chrono::sys_days day{last};
  while (out.size() < count) {
    day += std::chrono::days{1};
    const std::chrono::weekday wd{day};
    if (wd != std::chrono::Saturday && wd != std::chrono::Sunday) out.emplace_back(day);
  }
  return out;
}

namespace {

std::shared_ptr<const std::vector<Date>> checked_timestamps(std::vector<Date> ts) {
  if (ts.empty()) throw Error(ErrorCode::invalid_series, "series must hold at least one sample");
  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (!ts[i].ok())
      throw Error(ErrorCode::invalid_series, "invalid calendar date", i);
    if (i > 0 && !(ts[i - 1] < ts[i])) {
      const auto code = ts[i - 1] == ts[i] ? ErrorCode::duplicate_date : ErrorCode::unordered_dates;
      throw Error(code, "timestamps must be strictly increasing (sample " + std::to_string(i) + ")", i);
    }
  }
  return std::make_shared<const std::vector<Date>>(std::move(ts));
}

}  // namespace

Series::Series(std::vector<Date> timestamps, std::vector<double> values, Unit unit)
    : timestamps_(checked_timestamps(std::move(timestamps))),
      values_(std::move(values)),
      defined_(values_.size(), true),
      unit_(unit) {
  validate_values();
}

Series::Series(std::vector<Date> timestamps, std::vector<double> values,
               std::vector<bool> defined, Unit unit)
    : Series(checked_timestamps(std::move(timestamps)), std::move(values),
             std::move(defined), unit) {}

Series::Series(std::shared_ptr<const std::vector<Date>> timestamps,
               std::vector<double> values, std::vector<bool> defined, Unit unit)
    : timestamps_(std::move(timestamps)),
      values_(std::move(values)),
      defined_(std::move(defined)),
      unit_(unit) {
  validate_values();
}

void Series::validate_values() {
  if (values_.size() != timestamps_->size() || defined_.size() != values_.size())
    throw Error(ErrorCode::invalid_series, "timestamps, values and mask differ in length");
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!defined_[i]) {
      values_[i] = 0.0;
    } else if (!std::isfinite(values_[i])) {
      throw Error(ErrorCode::invalid_series,
                  "non-finite value at sample " + std::to_string(i), i);
    }
  }
}

Series Series::from_values(std::vector<double> values, Unit unit) {
  auto dates = daily_dates(values.size());
  return Series(std::move(dates), std::move(values), unit);
}

std::size_t Series::defined_count() const noexcept {
  return static_cast<std::size_t>(std::count(defined_.begin(), defined_.end(), true));
}

bool Series::same_timestamps(const Series& other) const noexcept {
  return timestamps_ == other.timestamps_ || *timestamps_ == *other.timestamps_;
}

Series Series::derive(std::vector<double> values, std::vector<bool> defined,
                      Unit unit) const {
  return Series(timestamps_, std::move(values), std::move(defined), unit);
}

Series Series::derive(std::vector<double> values, Unit unit) const {
  std::vector<bool> defined(values.size(), true);
  return Series(timestamps_, std::move(values), std::move(defined), unit);
}

const Series& validate_positive(const Series& series) {
  const auto v = series.values();
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (series.is_defined(i) && !(v[i] > 0.0))
      throw Error(ErrorCode::non_positive_price,
                  "non-positive price at sample " + std::to_string(i), i);
  }
  return series;
}

namespace {

Series restrict_to(const Series& s, const std::vector<std::size_t>& keep,
                   const std::vector<Date>& dates) {
  std::vector<double> values;
  std::vector<bool> defined;
  values.reserve(keep.size());
  defined.reserve(keep.size());
  for (auto i : keep) {
    values.push_back(s[i]);
    defined.push_back(s.is_defined(i));
  }
  return Series(dates, std::move(values), std::move(defined), s.unit());
}

}  // namespace

Aligned align(const Series& left, const Series& right) {
  if (left.same_timestamps(right)) {
    return {left, right, {left.size(), 0, 0}};
  }
  const auto a = left.timestamps();
  const auto b = right.timestamps();
  std::vector<std::size_t> keep_a, keep_b;
  std::vector<Date> common;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] < b[j]) {
      ++i;
    } else if (b[j] < a[i]) {
      ++j;
    } else {
      keep_a.push_back(i++);
      keep_b.push_back(j++);
      common.push_back(a[keep_a.back()]);
    }
  }
  if (common.empty())
    throw Error(ErrorCode::empty_intersection, "series share no common dates");
  AlignmentReport report{common.size(), a.size() - common.size(), b.size() - common.size()};
  return {restrict_to(left, keep_a, common), restrict_to(right, keep_b, common), report};
}

void require_aligned(const Series& a, const Series& b) {
  if (!a.same_timestamps(b))
    throw Error(ErrorCode::misaligned_series, "series timestamps differ; align them first");
}

}  // namespace trendvol
