#include "trendvol/returns.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace trendvol {

std::string_view to_string(ReturnKind kind) noexcept {
  switch (kind) {
    case ReturnKind::raw_log: return "raw_log";
    case ReturnKind::arithmetic: return "arithmetic";
    case ReturnKind::normalized: return "normalized";
    case ReturnKind::mean: return "mean";
    case ReturnKind::instantaneous_mean: return "instantaneous_mean";
    case ReturnKind::modified: return "modified";
  }
  return "unknown";
}

namespace {

void check_horizon(const Series& prices, int delta_t) {
  if (delta_t < 1) throw Error(ErrorCode::invalid_config, "return horizon must be at least 1 sample");
  if (prices.size() <= static_cast<std::size_t>(delta_t))
    throw Error(ErrorCode::series_too_short,
                "series of " + std::to_string(prices.size()) +
                    " samples is too short for a return horizon of " + std::to_string(delta_t));
}

template <class F>
Series lagged(const Series& s, int delta_t, F&& combine) {
  const auto lag = static_cast<std::size_t>(delta_t);
  std::vector<double> v(s.size(), 0.0);
  std::vector<bool> d(s.size(), false);
  for (std::size_t t = lag; t < s.size(); ++t) {
    if (!s.is_defined(t) || !s.is_defined(t - lag)) continue;
    v[t] = combine(s[t], s[t - lag]);
    d[t] = true;
  }
  return s.derive(std::move(v), std::move(d), Unit::return_per_day);
}

double median_of(std::vector<double>& v) {
  const auto mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + static_cast<long>(mid), v.end());
  const double upper = v[mid];
  if (v.size() % 2 == 1) return upper;
  const double lower = *std::max_element(v.begin(), v.begin() + static_cast<long>(mid));
  return 0.5 * (lower + upper);
}

}  // namespace

Series relative_log_price(const Series& prices) {
  validate_positive(prices);
  const auto x = prices.values();
  std::size_t first = 0;
  while (first < x.size() && !prices.is_defined(first)) ++first;
  std::vector<double> v(x.size(), 0.0);
  for (std::size_t i = first; i < x.size(); ++i)
    if (prices.is_defined(i)) v[i] = std::log(x[i] / x[first]);
  return prices.derive(std::move(v), prices.defined(), Unit::log_price);
}

ReturnSeries log_return(const Series& prices, int delta_t) {
  validate_positive(prices);
  check_horizon(prices, delta_t);
  return {lagged(prices, delta_t, [](double now, double then) { return std::log(now / then); }),
          delta_t, ReturnKind::raw_log, {}};
}

ReturnSeries arithmetic_return(const Series& prices, int delta_t) {
  validate_positive(prices);
  check_horizon(prices, delta_t);
  return {lagged(prices, delta_t, [](double now, double then) { return (now - then) / then; }),
          delta_t, ReturnKind::arithmetic, {}};
}

ReturnSeries normalized_return(const Series& prices, int delta_t) {
  validate_positive(prices);
  check_horizon(prices, delta_t);
  const double dt = delta_t;
  return {lagged(prices, delta_t,
                 [dt](double now, double then) { return std::log(now / then) / dt; }),
          delta_t, ReturnKind::normalized, {}};
}

ReturnSeries mean_return(const Series& prices, int delta_t, const TrendConfig& cfg) {
  check_horizon(prices, delta_t);
  const auto trend = estimate_trend(relative_log_price(prices), cfg);
  const double dt = delta_t;
  auto r = lagged(trend, delta_t, [dt](double now, double then) { return (now - then) / dt; });
  if (r.defined_count() == 0)
    throw Error(ErrorCode::series_too_short, "no sample has both trend values for the mean return");
  return {std::move(r), delta_t, ReturnKind::mean, {}};
}

ReturnSeries instantaneous_mean_return(const Series& prices, const TrendConfig& cfg) {
  auto d = estimate_derivative(relative_log_price(prices), cfg);
  return {std::move(d), 0, ReturnKind::instantaneous_mean, {}};
}

void ClipOptions::validate() const {
  if (!(k > 0.0)) throw Error(ErrorCode::invalid_config, "clip multiplier k must be positive");
  if (window < 3) throw Error(ErrorCode::invalid_config, "clip window must be at least 3 samples");
}

ReturnSeries clamp_return(const ReturnSeries& r, double k, int window) {
  if (r.kind != ReturnKind::normalized)
    throw Error(ErrorCode::wrong_kind, "only normalized return series can be clipped, got " +
                                           std::string(to_string(r.kind)));
  ClipOptions{true, k, window}.validate();
  const auto& s = r.values;
  const auto x = s.values();
  const auto w = static_cast<std::size_t>(window);
  std::vector<double> out(x.begin(), x.end());
  std::vector<bool> clipped(s.size(), false);
  std::vector<double> past, dev;
  for (std::size_t t = 0; t < s.size(); ++t) {
    if (!s.is_defined(t)) continue;
    past.clear();
    for (std::size_t i = t >= w ? t - w : 0; i < t; ++i)
      if (s.is_defined(i)) past.push_back(x[i]);
    if (past.size() < 3) continue;
    const double median = median_of(past);
    dev.clear();
    for (double v : past) dev.push_back(std::abs(v - median));
    const double mad = median_of(dev);
    const double lo = median - k * mad;
    const double hi = median + k * mad;
    if (x[t] < lo || x[t] > hi) {
      out[t] = std::clamp(x[t], lo, hi);
      clipped[t] = true;
    }
  }
  return {s.derive(std::move(out), s.defined(), s.unit()), r.delta_t, ReturnKind::modified,
          std::move(clipped)};
}

AssetVolatility asset_volatility(const Series& prices, int delta_t, const MomentConfig& cfg,
                                 const ClipOptions& clip) {
  cfg.validate();
  auto r = normalized_return(prices, delta_t);
  if (clip.enabled) r = clamp_return(r, clip.k, clip.window);
  auto rbar = mean_return(prices, delta_t, cfg.trend);

  const auto n = prices.size();
  std::vector<double> sq_dev(n, 0.0), abs_dev(n, 0.0), sq(n, 0.0);
  std::vector<bool> both(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    both[i] = r.values.is_defined(i) && rbar.values.is_defined(i);
    if (!both[i]) continue;
    const double dev = r.values[i] - rbar.values[i];
    sq_dev[i] = dev * dev;
    abs_dev[i] = std::abs(dev);
    sq[i] = r.values[i] * r.values[i];
  }
  const auto& base = r.values;
  const auto e_sq_dev = estimate_trend(base.derive(std::move(sq_dev), both, Unit::dimensionless), cfg.trend);
  auto primary = clamp_and_sqrt(e_sq_dev, cfg.variance_floor);

  const auto e_sq = estimate_trend(base.derive(std::move(sq), both, Unit::dimensionless), cfg.trend);
  std::vector<double> alt(n, 0.0);
  std::vector<bool> alt_ok(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    alt_ok[i] = e_sq.is_defined(i) && rbar.values.is_defined(i);
    if (alt_ok[i]) alt[i] = e_sq[i] - rbar.values[i] * rbar.values[i];
  }
  auto moment = clamp_and_sqrt(base.derive(std::move(alt), std::move(alt_ok), Unit::dimensionless),
                               cfg.variance_floor);

  auto mad = estimate_trend(base.derive(std::move(abs_dev), both, Unit::return_per_day), cfg.trend);

  auto vol = primary.value.derive(std::vector<double>(primary.value.values().begin(),
                                                      primary.value.values().end()),
                                  primary.value.defined(), Unit::return_per_day);
  return {std::move(r), std::move(rbar), std::move(vol), std::move(moment.value),
          std::move(mad), std::move(primary.clamped)};
}

}  // namespace trendvol
