#include "trendvol/indicators.hpp"

#include <cmath>

namespace trendvol {

void BetaConfig::validate() const {
  trend.validate();
  curve().validate();
  if (!(epsilon > 0.0)) throw Error(ErrorCode::invalid_config, "beta epsilon must be positive");
  if (curve().degree < 1)
    throw Error(ErrorCode::degree_too_low, "differentiating mean-return curves needs degree >= 1");
}

namespace {

BetaSeries ratio_of_slopes(ReturnSeries market_curve, ReturnSeries asset_curve,
                           const BetaConfig& cfg) {
  auto dx = local_fit(market_curve.values, cfg.curve()).slope;
  auto dy = local_fit(asset_curve.values, cfg.curve()).slope;
  const auto n = dx.size();
  std::vector<double> v(n, 0.0);
  std::vector<bool> ok(n, false), undefined(n, true);
  for (std::size_t i = 0; i < n; ++i) {
    if (!dx.is_defined(i) || !dy.is_defined(i) || std::abs(dx[i]) < cfg.epsilon) continue;
    v[i] = dy[i] / dx[i];
    ok[i] = true;
    undefined[i] = false;
  }
  auto values = dx.derive(std::move(v), std::move(ok), Unit::dimensionless);
  return {std::move(values), std::move(undefined), cfg.epsilon,
          std::move(market_curve), std::move(asset_curve), std::move(dx), std::move(dy)};
}

void check_pair(const Series& asset, const Series& market, const BetaConfig& cfg) {
  require_aligned(asset, market);
  cfg.validate();
  validate_positive(asset);
  validate_positive(market);
}

}  // namespace

BetaSeries beta(const Series& asset, const Series& market, int delta_t, const BetaConfig& cfg) {
  check_pair(asset, market, cfg);
  return ratio_of_slopes(mean_return(market, delta_t, cfg.trend),
                         mean_return(asset, delta_t, cfg.trend), cfg);
}

BetaSeries instantaneous_beta(const Series& asset, const Series& market, const BetaConfig& cfg) {
  check_pair(asset, market, cfg);
  return ratio_of_slopes(instantaneous_mean_return(market, cfg.trend),
                         instantaneous_mean_return(asset, cfg.trend), cfg);
}

Series treynor_ratio(const ReturnSeries& mean, const BetaSeries& b, double risk_free) {
  const auto n = b.values.size();
  std::vector<double> v(n, 0.0);
  std::vector<bool> ok(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    if (!b.values.is_defined(i) || !mean.values.is_defined(i) || std::abs(b.values[i]) < b.epsilon)
      continue;
    v[i] = (mean.values[i] - risk_free) / b.values[i];
    ok[i] = true;
  }
  return b.values.derive(std::move(v), std::move(ok), Unit::return_per_day);
}

Series treynor(const Series& asset, const Series& market, int delta_t, const BetaConfig& cfg,
               double risk_free) {
  const auto b = beta(asset, market, delta_t, cfg);
  return treynor_ratio(b.asset_curve, b, risk_free);
}

Series instantaneous_treynor(const Series& asset, const Series& market, const BetaConfig& cfg,
                             double risk_free) {
  const auto b = instantaneous_beta(asset, market, cfg);
  return treynor_ratio(b.asset_curve, b, risk_free);
}

Series sharpe_ratio(const AssetVolatility& vol, double epsilon_vol, double risk_free) {
  const auto& mean = vol.mean.values;
  const auto n = mean.size();
  std::vector<double> v(n, 0.0);
  std::vector<bool> ok(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    if (!mean.is_defined(i) || !vol.volatility.is_defined(i) || vol.volatility[i] < epsilon_vol)
      continue;
    v[i] = (mean[i] - risk_free) / vol.volatility[i];
    ok[i] = true;
  }
  return mean.derive(std::move(v), std::move(ok), Unit::dimensionless);
}

Series sharpe(const Series& asset, int delta_t, const SharpeConfig& cfg) {
  if (!(cfg.epsilon_vol > 0.0))
    throw Error(ErrorCode::invalid_config, "volatility epsilon must be positive");
  return sharpe_ratio(asset_volatility(asset, delta_t, cfg.moments, cfg.clip), cfg.epsilon_vol,
                      cfg.risk_free);
}

}  // namespace trendvol
