#pragma once

#include <optional>
#include <vector>

#include "trendvol/returns.hpp"

namespace trendvol {

/// Defaults for the ratio denominators: numerical zeros only.
inline constexpr double kDefaultBetaEpsilon = 1e-6;
inline constexpr double kDefaultVolatilityEpsilon = 1e-8;

struct BetaConfig {
  TrendConfig trend;
  /// Smoothing used to differentiate the mean-return curves; defaults to `trend`.
  std::optional<TrendConfig> curve_trend;
  double epsilon = kDefaultBetaEpsilon;

  const TrendConfig& curve() const { return curve_trend ? *curve_trend : trend; }
  void validate() const;
};

/// beta(t) = (d/dt y_C) / (d/dt x_C) with the market's mean return on the
/// x-axis and the asset's on the y-axis. Undefined where |d/dt x_C| < epsilon.
struct BetaSeries {
  Series values;
  std::vector<bool> undefined_mask;
  double epsilon = kDefaultBetaEpsilon;
  ReturnSeries market_curve;  ///< x_C
  ReturnSeries asset_curve;   ///< y_C
  Series market_slope;        ///< d/dt x_C
  Series asset_slope;         ///< d/dt y_C
};

/// Curves from mean returns over `delta_t`. Throws misaligned_series,
/// degree_too_low, non_positive_price.
BetaSeries beta(const Series& asset, const Series& market, int delta_t, const BetaConfig& cfg);

/// Curves from instantaneous mean returns.
BetaSeries instantaneous_beta(const Series& asset, const Series& market, const BetaConfig& cfg);

/// Mean return over beta; undefined where beta is undefined or |beta| < epsilon.
/// `risk_free` (per day) is subtracted from the mean return first.
Series treynor(const Series& asset, const Series& market, int delta_t,
               const BetaConfig& cfg, double risk_free = 0.0);

Series instantaneous_treynor(const Series& asset, const Series& market,
                             const BetaConfig& cfg, double risk_free = 0.0);

/// Ratio of a return series to beta, with the masking rules of treynor().
Series treynor_ratio(const ReturnSeries& mean, const BetaSeries& beta, double risk_free = 0.0);

struct SharpeConfig {
  MomentConfig moments;
  ClipOptions clip;
  double epsilon_vol = kDefaultVolatilityEpsilon;
  double risk_free = 0.0;
};

/// Mean return over asset volatility; undefined where volatility < epsilon_vol.
Series sharpe(const Series& asset, int delta_t, const SharpeConfig& cfg);

/// Sharpe ratio from an already computed volatility pipeline.
Series sharpe_ratio(const AssetVolatility& vol, double epsilon_vol, double risk_free = 0.0);

}  // namespace trendvol
