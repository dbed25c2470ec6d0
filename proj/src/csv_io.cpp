#include <fstream>
#include <istream>

#include "text.hpp"
#include "trendvol/frame.hpp"

namespace trendvol {

Series parse_price_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  std::vector<Date> dates;
  std::vector<double> prices;
  while (std::getline(in, line)) {
    ++line_no;
    const auto text = detail::trim(line);
    if (text.empty()) continue;
    const auto fields = detail::split(text);
    if (!have_header) {
      if (fields.size() != 2 || detail::trim(fields[0]) != "date" || detail::trim(fields[1]) != "close")
        throw Error(ErrorCode::parse_error, "expected header 'date,close'", line_no);
      have_header = true;
      continue;
    }
    if (fields.size() != 2)
      throw Error(ErrorCode::parse_error, "expected 2 fields, got " + std::to_string(fields.size()), line_no);
    const auto date = parse_date(detail::trim(fields[0]));
    if (!date)
      throw Error(ErrorCode::parse_error, "invalid date '" + std::string(detail::trim(fields[0])) + "'", line_no);
    const auto close = detail::parse_double(detail::trim(fields[1]));
    if (!close)
      throw Error(ErrorCode::parse_error, "invalid close '" + std::string(detail::trim(fields[1])) + "'", line_no);
    if (!dates.empty()) {
      if (*date == dates.back())
        throw Error(ErrorCode::duplicate_date, "duplicate date " + format_date(*date), line_no);
      if (*date < dates.back())
        throw Error(ErrorCode::unordered_dates, "date " + format_date(*date) + " is out of order", line_no);
    }
    if (!(*close > 0.0))
      throw Error(ErrorCode::non_positive_price, "non-positive close " + format_double(*close), line_no);
    dates.push_back(*date);
    prices.push_back(*close);
  }
  if (!have_header) throw Error(ErrorCode::parse_error, "empty price file", line_no == 0 ? 1 : line_no);
  if (dates.empty()) throw Error(ErrorCode::parse_error, "price file has no data rows", line_no);
  return Series(std::move(dates), std::move(prices), Unit::price);
}

Series load_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::io_error, "cannot open " + path.string());
  return parse_price_csv(in);
}

}  // namespace trendvol
