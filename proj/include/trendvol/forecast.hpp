#pragma once

#include <cstddef>

#include "trendvol/returns.hpp"

namespace trendvol {

enum class ForecastOrder {
  level,    ///< c_0
  taylor1,  ///< c_0 + h * c_1
};

struct ForecastConfig {
  int horizon = 5;
  ForecastOrder order = ForecastOrder::taylor1;
  TrendConfig trend;

  void validate() const;
};

/// Rolling h-step forecasts indexed by target date. Sample j holds the
/// prediction for j issued at origin j - h from samples <= j - h only.
/// The output is `h` samples longer than the input: the trailing targets lie
/// past the last observation and are dated on the following weekdays.
Series forecast_series(const Series& x, const ForecastConfig& cfg);

/// asset_volatility() followed by forecast_series() on the volatility.
Series forecast_volatility(const Series& prices, int delta_t, const MomentConfig& moments,
                           const ForecastConfig& cfg, const ClipOptions& clip = {});

struct ForecastError {
  double rmse = 0.0;
  double mae = 0.0;
  double bias = 0.0;  ///< mean of predicted - realized
  std::size_t count = 0;
};

/// Error statistics over dates where both series are defined.
/// Throws empty_intersection when no such date exists.
ForecastError evaluate_forecast(const Series& predicted, const Series& realized);

}  // namespace trendvol
