#include "trendvol/frame.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <ostream>
#include <system_error>

#include "json.hpp"
#include "text.hpp"

namespace trendvol {

IndicatorFrame::IndicatorFrame(std::vector<Date> dates) : dates_(std::move(dates)) {
  for (std::size_t i = 1; i < dates_.size(); ++i)
    if (!(dates_[i - 1] < dates_[i]))
      throw Error(ErrorCode::invalid_series, "frame dates must be strictly increasing", i);
}

const Column* IndicatorFrame::find(std::string_view name) const noexcept {
  for (const auto& c : columns_)
    if (c.name == name) return &c;
  return nullptr;
}

void IndicatorFrame::add_column(std::string name, const Series& s, double scale) {
  Column col{std::move(name), std::vector<double>(dates_.size(), 0.0),
             std::vector<bool>(dates_.size(), false)};
  const auto ts = s.timestamps();
  std::size_t row = 0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    while (row < dates_.size() && dates_[row] < ts[i]) ++row;
    if (row == dates_.size() || dates_[row] != ts[i])
      throw Error(ErrorCode::invalid_series,
                  "column '" + col.name + "' has a date outside the frame: " + format_date(ts[i]), i);
    if (s.is_defined(i)) {
      col.values[row] = s[i] * scale;
      col.defined[row] = true;
    }
  }
  add_column(std::move(col));
}

void IndicatorFrame::add_column(Column column) {
  if (column.values.size() != dates_.size() || column.defined.size() != dates_.size())
    throw Error(ErrorCode::invalid_series, "column '" + column.name + "' length differs from the frame");
  if (column.name.empty() || column.name == "date" || find(column.name))
    throw Error(ErrorCode::invalid_series, "column name '" + column.name + "' is empty or duplicated");
  for (std::size_t i = 0; i < column.values.size(); ++i)
    if (!column.defined[i]) column.values[i] = 0.0;
  columns_.push_back(std::move(column));
}

void IndicatorFrame::set_meta(std::string key, MetaValue value) {
  for (auto& [k, v] : meta_) {
    if (k == key) {
      v = std::move(value);
      return;
    }
  }
  meta_.emplace_back(std::move(key), std::move(value));
}

void IndicatorFrame::fill_forward(std::string_view name) {
  for (auto& c : columns_) {
    if (c.name != name) continue;
    bool have = false;
    double last = 0.0;
    for (std::size_t i = 0; i < c.values.size(); ++i) {
      if (c.defined[i]) {
        have = true;
        last = c.values[i];
      } else if (have) {
        c.values[i] = last;
        c.defined[i] = true;
      }
    }
    return;
  }
  throw Error(ErrorCode::invalid_config, "no column named '" + std::string(name) + "'");
}

std::string format_double(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

namespace {

std::string meta_text(const MetaValue& v) {
  return std::visit(
      [](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, bool>) return x ? "true" : "false";
        else if constexpr (std::is_same_v<T, long long>) return std::to_string(x);
        else if constexpr (std::is_same_v<T, double>) return format_double(x);
        else return x;
      },
      v);
}

void write_csv(const IndicatorFrame& frame, std::ostream& out) {
  for (const auto& [key, value] : frame.meta()) out << "# " << key << '=' << meta_text(value) << '\n';
  out << "date";
  for (const auto& c : frame.columns()) out << ',' << c.name;
  out << '\n';
  for (std::size_t r = 0; r < frame.dates().size(); ++r) {
    out << format_date(frame.dates()[r]);
    for (const auto& c : frame.columns()) {
      out << ',';
      if (c.defined[r]) out << format_double(c.values[r]);
    }
    out << '\n';
  }
}

void write_json(const IndicatorFrame& frame, std::ostream& out) {
  using json = nlohmann::ordered_json;
  json meta = json::object();
  for (const auto& [key, value] : frame.meta())
    std::visit([&](const auto& x) { meta[key] = x; }, value);
  json rows = json::array();
  for (std::size_t r = 0; r < frame.dates().size(); ++r) {
    json row = json::object();
    row["date"] = format_date(frame.dates()[r]);
    for (const auto& c : frame.columns())
      row[c.name] = c.defined[r] ? json(c.values[r]) : json(nullptr);
    rows.push_back(std::move(row));
  }
  json doc = json::object();
  doc["meta"] = std::move(meta);
  doc["rows"] = std::move(rows);
  out << doc.dump(1) << '\n';
}

}  // namespace

void write_frame(const IndicatorFrame& frame, FrameFormat format, std::ostream& out) {
  if (format == FrameFormat::csv) write_csv(frame, out);
  else write_json(frame, out);
  out.flush();
  if (!out) throw Error(ErrorCode::io_error, "failed to write frame output");
}

IndicatorFrame read_frame_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::pair<std::string, std::string>> meta;
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    ++line_no;
    const auto text = detail::trim(line);
    if (text.empty()) continue;
    if (text.front() == '#') {
      const auto body = detail::trim(text.substr(1));
      const auto eq = body.find('=');
      if (eq == std::string_view::npos)
        throw Error(ErrorCode::parse_error, "metadata line without '='", line_no);
      meta.emplace_back(std::string(body.substr(0, eq)), std::string(body.substr(eq + 1)));
      continue;
    }
    for (auto f : detail::split(text)) header.emplace_back(detail::trim(f));
    break;
  }
  if (header.empty() || header.front() != "date")
    throw Error(ErrorCode::parse_error, "missing frame header row", line_no);

  std::vector<Date> dates;
  std::vector<Column> cols(header.size() - 1);
  for (std::size_t c = 1; c < header.size(); ++c) cols[c - 1].name = header[c];
  while (std::getline(in, line)) {
    ++line_no;
    const auto text = detail::trim(line);
    if (text.empty()) continue;
    const auto fields = detail::split(text);
    if (fields.size() != header.size())
      throw Error(ErrorCode::parse_error, "expected " + std::to_string(header.size()) + " fields", line_no);
    const auto date = parse_date(detail::trim(fields[0]));
    if (!date) throw Error(ErrorCode::parse_error, "invalid date", line_no);
    dates.push_back(*date);
    for (std::size_t c = 1; c < fields.size(); ++c) {
      const auto f = detail::trim(fields[c]);
      auto& col = cols[c - 1];
      if (f.empty()) {
        col.values.push_back(0.0);
        col.defined.push_back(false);
        continue;
      }
      const auto v = detail::parse_double(f);
      if (!v) throw Error(ErrorCode::parse_error, "invalid number '" + std::string(f) + "'", line_no);
      col.values.push_back(*v);
      col.defined.push_back(true);
    }
  }
  IndicatorFrame frame(std::move(dates));
  for (auto& c : cols) frame.add_column(std::move(c));
  for (auto& [k, v] : meta) frame.set_meta(std::move(k), std::move(v));
  return frame;
}

}  // namespace trendvol
