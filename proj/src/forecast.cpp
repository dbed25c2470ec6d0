#include "trendvol/forecast.hpp"

#include <cmath>

namespace trendvol {

void ForecastConfig::validate() const {
  if (horizon < 1) throw Error(ErrorCode::invalid_config, "forecast horizon must be at least 1");
  trend.validate();
  if (order == ForecastOrder::taylor1 && trend.degree < 1)
    throw Error(ErrorCode::degree_too_low, "first-order extrapolation needs degree >= 1");
}

Series forecast_series(const Series& x, const ForecastConfig& cfg) {
  cfg.validate();
  const auto fit = local_fit(x, cfg.trend);
  if (fit.level.defined_count() == 0)
    throw Error(ErrorCode::series_too_short, "series too short for the forecast trend window");

  const auto n = x.size();
  const auto h = static_cast<std::size_t>(cfg.horizon);
  std::vector<Date> dates(x.timestamps().begin(), x.timestamps().end());
  const auto extra = next_weekdays(dates.back(), h);
  dates.insert(dates.end(), extra.begin(), extra.end());

  std::vector<double> v(n + h, 0.0);
  std::vector<bool> ok(n + h, false);
  const double steps = static_cast<double>(h);
  for (std::size_t origin = 0; origin < n; ++origin) {
    if (!fit.level.is_defined(origin)) continue;
    double value = fit.level[origin];
    if (cfg.order == ForecastOrder::taylor1) value += steps * fit.slope[origin];
    v[origin + h] = value;
    ok[origin + h] = true;
  }
  return Series(std::move(dates), std::move(v), std::move(ok), x.unit());
}

Series forecast_volatility(const Series& prices, int delta_t, const MomentConfig& moments,
                           const ForecastConfig& cfg, const ClipOptions& clip) {
  cfg.validate();
  return forecast_series(asset_volatility(prices, delta_t, moments, clip).volatility, cfg);
}

ForecastError evaluate_forecast(const Series& predicted, const Series& realized) {
  const auto a = predicted.timestamps();
  const auto b = realized.timestamps();
  ForecastError out;
  double sum_sq = 0.0, sum_abs = 0.0, sum = 0.0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] < b[j]) {
      ++i;
    } else if (b[j] < a[i]) {
      ++j;
    } else {
      if (predicted.is_defined(i) && realized.is_defined(j)) {
        const double e = predicted[i] - realized[j];
        sum_sq += e * e;
        sum_abs += std::abs(e);
        sum += e;
        ++out.count;
      }
      ++i;
      ++j;
    }
  }
  if (out.count == 0)
    throw Error(ErrorCode::empty_intersection, "forecast and realized series share no defined dates");
  const double n = static_cast<double>(out.count);
  out.rmse = std::sqrt(sum_sq / n);
  out.mae = sum_abs / n;
  out.bias = sum / n;
  return out;
}

}  // namespace trendvol
