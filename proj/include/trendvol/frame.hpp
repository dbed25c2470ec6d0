#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "trendvol/series.hpp"

namespace trendvol {

using MetaValue = std::variant<bool, long long, double, std::string>;

struct Column {
  std::string name;
  std::vector<double> values;
  std::vector<bool> defined;
};

/// A per-date table of indicator columns plus a configuration echo.
/// Undefined cells are written as empty CSV fields or JSON nulls.
class IndicatorFrame {
 public:
  explicit IndicatorFrame(std::vector<Date> dates);

  const std::vector<Date>& dates() const noexcept { return dates_; }
  const std::vector<Column>& columns() const noexcept { return columns_; }
  const std::vector<std::pair<std::string, MetaValue>>& meta() const noexcept { return meta_; }
  const Column* find(std::string_view name) const noexcept;

  /// Places each sample of `s` on its date; dates absent from `s` stay
  /// undefined. Throws invalid_series if `s` has a date the frame lacks.
  void add_column(std::string name, const Series& s, double scale = 1.0);
  void add_column(Column column);

  /// Inserts or replaces a metadata entry, keeping first-insertion order.
  void set_meta(std::string key, MetaValue value);

  /// Carries the last defined value forward into undefined cells.
  void fill_forward(std::string_view name);

 private:
  std::vector<Date> dates_;
  std::vector<Column> columns_;
  std::vector<std::pair<std::string, MetaValue>> meta_;
};

enum class FrameFormat { csv, json };

/// Shortest decimal text that parses back to the identical double.
std::string format_double(double value);

/// CSV: `# key=value` metadata lines, a header row, then one row per date.
/// JSON: {"meta": {...}, "rows": [{"date": ..., "<col>": number|null}]}.
/// Output is byte-identical for identical frames. Throws io_error.
void write_frame(const IndicatorFrame& frame, FrameFormat format, std::ostream& out);

/// Reads back a CSV written by write_frame (metadata values as strings).
IndicatorFrame read_frame_csv(std::istream& in);

/// Parses a `date,close` price file: ISO dates ascending, positive prices.
/// Errors carry the 1-based line number: parse_error, unordered_dates,
/// duplicate_date, non_positive_price.
Series parse_price_csv(std::istream& in);
Series load_csv(const std::filesystem::path& path);

}  // namespace trendvol
