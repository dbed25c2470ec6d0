#pragma once

#include <vector>

#include "trendvol/series.hpp"
#include "trendvol/trend.hpp"

namespace trendvol {

struct MomentConfig {
  TrendConfig trend;
  double variance_floor = 0.0;

  void validate() const;
};

/// A variance-like estimate clamped below at the configured floor.
/// `unclamped` keeps E(X^2) - E(X)^2 as computed; `clamped[i]` flags the
/// samples the floor touched.
struct ClampedEstimate {
  Series value;
  Series unclamped;
  std::vector<bool> clamped;
};

/// cov(XY)(t) = E(XY)(t) - E(X)(t) E(Y)(t). Throws misaligned_series.
Series covariance(const Series& x, const Series& y, const MomentConfig& cfg);

/// var(X)(t) = E(X^2)(t) - E(X)(t)^2, clamped at cfg.variance_floor.
ClampedEstimate variance(const Series& x, const MomentConfig& cfg);

/// Pointwise square root of variance().
ClampedEstimate volatility(const Series& x, const MomentConfig& cfg);

/// E(|X - E(X)|)(t).
Series abs_deviation_volatility(const Series& x, const MomentConfig& cfg);

/// Applies the floor to an already formed variance series.
ClampedEstimate clamp_variance(const Series& raw_variance, double floor);

/// Applies the floor and square root to an already formed variance series.
ClampedEstimate clamp_and_sqrt(const Series& raw_variance, double floor);

}  // namespace trendvol
