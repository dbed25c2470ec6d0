#pragma once

#include <string_view>
#include <vector>

#include "trendvol/moments.hpp"
#include "trendvol/series.hpp"
#include "trendvol/trend.hpp"

namespace trendvol {

enum class ReturnKind { raw_log, arithmetic, normalized, mean, instantaneous_mean, modified };

std::string_view to_string(ReturnKind kind) noexcept;

/// A return series over horizon `delta_t` samples. Instantaneous mean
/// returns carry delta_t == 0. `clipped` is only populated for modified
/// returns.
struct ReturnSeries {
  Series values;
  int delta_t = 1;
  ReturnKind kind = ReturnKind::raw_log;
  std::vector<bool> clipped;
};

/// ln X(t) - ln X(t - delta_t); the first delta_t samples are undefined.
ReturnSeries log_return(const Series& prices, int delta_t);

/// (X(t) - X(t - delta_t)) / X(t - delta_t).
ReturnSeries arithmetic_return(const Series& prices, int delta_t);

/// log_return / delta_t, in units per day.
ReturnSeries normalized_return(const Series& prices, int delta_t);

/// (E(ln X)(t) - E(ln X)(t - delta_t)) / delta_t.
ReturnSeries mean_return(const Series& prices, int delta_t, const TrendConfig& cfg);

/// d/dt E(ln X)(t). Throws degree_too_low for degree 0.
ReturnSeries instantaneous_mean_return(const Series& prices, const TrendConfig& cfg);

/// Log-prices relative to the first defined price, ln(X(t) / X(t0)).
Series relative_log_price(const Series& prices);

/// Robust outlier clip for normalized returns. Each sample is limited to
/// median +- k * MAD of the previous `window` defined samples (the current
/// sample excluded, MAD unscaled). Samples with fewer than 3 predecessors
/// pass through. A zero MAD clips to the median itself.
struct ClipOptions {
  bool enabled = false;
  double k = 6.0;
  int window = 250;

  void validate() const;
};

/// Throws wrong_kind unless `r` is a normalized return series.
ReturnSeries clamp_return(const ReturnSeries& r, double k, int window);

/// Every intermediate of vol_dT(t) = sqrt(E((r_dT - rbar_dT)^2)(t)).
struct AssetVolatility {
  ReturnSeries returns;       ///< r_dT, modified when clipping is enabled
  ReturnSeries mean;          ///< rbar_dT
  Series volatility;          ///< primary form
  Series moment_form;         ///< sqrt(E(r^2) - rbar^2), diagnostic
  Series abs_deviation;       ///< E(|r - rbar|)
  std::vector<bool> clamped;  ///< variance floor hit by the primary form
};

AssetVolatility asset_volatility(const Series& prices, int delta_t,
                                 const MomentConfig& cfg,
                                 const ClipOptions& clip = {});

}  // namespace trendvol
