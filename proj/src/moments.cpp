#include "trendvol/moments.hpp"

#include <cmath>

namespace trendvol {

void MomentConfig::validate() const {
  trend.validate();
  if (!(variance_floor >= 0.0))
    throw Error(ErrorCode::invalid_config, "variance floor must be non-negative");
}

namespace {

Series pointwise_product(const Series& x, const Series& y) {
  std::vector<double> v(x.size());
  std::vector<bool> d(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    d[i] = x.is_defined(i) && y.is_defined(i);
    v[i] = d[i] ? x[i] * y[i] : 0.0;
  }
  return x.derive(std::move(v), std::move(d), x.unit());
}

// E(XY) - E(X) E(Y); identical arithmetic for x == y keeps cov(x,x) == var(x).
// A window holding exactly degree + 1 points is interpolated, so the
// difference is zero and is set so rather than left to cancellation.
Series centered_product(const Series& x, const Series& y, const TrendConfig& cfg) {
  const auto xy = pointwise_product(x, y);
  const auto exy = estimate_trend(xy, cfg);
  const auto ex = estimate_trend(x, cfg);
  const auto ey = &x == &y ? ex : estimate_trend(y, cfg);
  const auto window = static_cast<std::size_t>(cfg.window);
  const auto minimal = static_cast<std::size_t>(cfg.degree) + 1;
  std::vector<double> v(x.size(), 0.0);
  std::vector<bool> d(x.size());
  std::size_t in_window = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    in_window += xy.is_defined(i);
    if (i >= window) in_window -= xy.is_defined(i - window);
    d[i] = exy.is_defined(i) && ex.is_defined(i) && ey.is_defined(i);
    if (d[i] && in_window > minimal) v[i] = exy[i] - ex[i] * ey[i];
  }
  return x.derive(std::move(v), std::move(d), Unit::dimensionless);
}

}  // namespace

Series covariance(const Series& x, const Series& y, const MomentConfig& cfg) {
  cfg.validate();
  require_aligned(x, y);
  return centered_product(x, y, cfg.trend);
}

ClampedEstimate clamp_and_sqrt(const Series& raw, double floor) {
  auto clamped = clamp_variance(raw, floor);
  std::vector<double> v(raw.size(), 0.0);
  for (std::size_t i = 0; i < raw.size(); ++i)
    if (clamped.value.is_defined(i)) v[i] = std::sqrt(clamped.value[i]);
  clamped.value = raw.derive(std::move(v), clamped.value.defined(), raw.unit());
  return clamped;
}

ClampedEstimate clamp_variance(const Series& raw, double floor) {
  std::vector<double> v(raw.size(), 0.0);
  std::vector<bool> flags(raw.size(), false);
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (!raw.is_defined(i)) continue;
    flags[i] = raw[i] < floor;
    v[i] = flags[i] ? floor : raw[i];
  }
  return {raw.derive(std::move(v), raw.defined(), raw.unit()), raw, std::move(flags)};
}

ClampedEstimate variance(const Series& x, const MomentConfig& cfg) {
  cfg.validate();
  return clamp_variance(centered_product(x, x, cfg.trend), cfg.variance_floor);
}

ClampedEstimate volatility(const Series& x, const MomentConfig& cfg) {
  cfg.validate();
  return clamp_and_sqrt(centered_product(x, x, cfg.trend), cfg.variance_floor);
}

Series abs_deviation_volatility(const Series& x, const MomentConfig& cfg) {
  cfg.validate();
  // Deviations are taken from the window's own fitted trend, the same
  // centering that E(X^2) - E(X)^2 applies in variance().
  std::vector<double> v(x.size(), 0.0);
  std::vector<bool> ok(x.size(), false);
  std::vector<double> abs_res;
  for_each_window(x, cfg.trend, [&](std::size_t t, std::span<const double> tau,
                                    std::span<const double> vals) {
    const auto c = fit_points(tau, vals, cfg.trend.degree);
    abs_res.resize(vals.size());
    for (std::size_t i = 0; i < vals.size(); ++i) {
      double fit = 0.0;
      for (auto k = c.size(); k-- > 0;) fit = fit * tau[i] + c[k];
      abs_res[i] = std::abs(vals[i] - fit);
    }
    v[t] = fit_points(tau, abs_res, cfg.trend.degree)[0];
    ok[t] = true;
  });
  auto out = x.derive(std::move(v), std::move(ok), x.unit());
  if (out.defined_count() == 0)
    throw Error(ErrorCode::series_too_short, "series too short for the trend window");
  return out;
}

}  // namespace trendvol
