#include "trendvol/trend.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <string>

namespace trendvol {

void TrendConfig::validate() const {
  if (window < 2)
    throw Error(ErrorCode::invalid_config, "trend window must be at least 2 samples");
  if (degree < 0)
    throw Error(ErrorCode::invalid_config, "polynomial degree must be non-negative");
  if (degree >= window)
    throw Error(ErrorCode::invalid_config, "polynomial degree must be below the window length");
}

namespace {

// Vandermonde in scaled local time u = tau / scale, so |u| <= 1.
Eigen::MatrixXd scaled_vandermonde(std::span<const double> tau, int degree, double scale) {
  const auto rows = static_cast<Eigen::Index>(tau.size());
  Eigen::MatrixXd v(rows, degree + 1);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const double u = tau[static_cast<std::size_t>(i)] / scale;
    double power = 1.0;
    for (int k = 0; k <= degree; ++k) {
      v(i, k) = power;
      power *= u;
    }
  }
  return v;
}

double tau_scale(std::span<const double> tau) {
  double s = 0.0;
  for (double t : tau) s = std::max(s, std::abs(t));
  return std::max(s, 1.0);
}

std::vector<double> trailing_tau(std::size_t w) {
  std::vector<double> tau(w);
  for (std::size_t i = 0; i < w; ++i) tau[i] = -static_cast<double>(w - 1 - i);
  return tau;
}

// Rows of the least-squares solution operator for c_0 and c_1, so that
// c_k = sum_i weights[k][i] * values[i]. Built once per window shape.
struct FitWeights {
  std::vector<double> level;
  std::vector<double> slope;
};

FitWeights solve_weights(std::span<const double> tau, int degree) {
  const double scale = tau_scale(tau);
  const auto v = scaled_vandermonde(tau, degree, scale);
  const Eigen::HouseholderQR<Eigen::MatrixXd> qr(v);
  const auto n = v.rows();
  const Eigen::MatrixXd pinv = qr.solve(Eigen::MatrixXd::Identity(n, n));
  FitWeights w;
  w.level.resize(static_cast<std::size_t>(n));
  w.slope.assign(static_cast<std::size_t>(n), 0.0);
  for (Eigen::Index i = 0; i < n; ++i) {
    w.level[static_cast<std::size_t>(i)] = pinv(0, i);
    if (degree >= 1) w.slope[static_cast<std::size_t>(i)] = pinv(1, i) / scale;
  }
  return w;
}

double dot(std::span<const double> w, std::span<const double> x) {
  double acc = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) acc += w[i] * x[i];
  return acc;
}

}  // namespace

std::vector<double> fit_points(std::span<const double> tau,
                               std::span<const double> values, int degree) {
  if (degree < 0) throw Error(ErrorCode::invalid_config, "polynomial degree must be non-negative");
  if (tau.size() != values.size())
    throw Error(ErrorCode::invalid_config, "local times and values differ in length");
  if (values.size() < static_cast<std::size_t>(degree) + 1)
    throw Error(ErrorCode::degenerate_window,
                "window of " + std::to_string(values.size()) +
                    " points cannot determine a degree-" + std::to_string(degree) + " fit");
  const double scale = tau_scale(tau);
  const auto v = scaled_vandermonde(tau, degree, scale);
  const Eigen::Map<const Eigen::VectorXd> y(values.data(), static_cast<Eigen::Index>(values.size()));
  const Eigen::VectorXd d = v.householderQr().solve(y);
  std::vector<double> c(static_cast<std::size_t>(degree) + 1);
  double factor = 1.0;
  for (int k = 0; k <= degree; ++k) {
    c[static_cast<std::size_t>(k)] = d(k) / factor;
    factor *= scale;
  }
  return c;
}

std::vector<double> fit_window(std::span<const double> values, int degree) {
  const auto tau = trailing_tau(values.size());
  return fit_points(tau, values, degree);
}

LocalFit local_fit(const Series& series, const TrendConfig& config) {
  config.validate();
  const std::size_t n = series.size();
  const auto window = static_cast<std::size_t>(config.window);
  const auto min_points = static_cast<std::size_t>(config.degree) + 1;
  const auto x = series.values();
  const auto& defined = series.defined();

  // prefix[i] = number of defined samples before index i
  std::vector<std::size_t> prefix(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) prefix[i + 1] = prefix[i] + (defined[i] ? 1 : 0);

  std::vector<FitWeights> contiguous(window + 1);
  auto weights_for = [&](std::size_t len) -> const FitWeights& {
    auto& w = contiguous[len];
    if (w.level.empty()) w = solve_weights(trailing_tau(len), config.degree);
    return w;
  };

  std::vector<double> level(n, 0.0), slope(n, 0.0);
  std::vector<bool> ok(n, false), full(n, false);
  std::vector<double> tau, vals;

  for (std::size_t t = 0; t < n; ++t) {
    const std::size_t lo = t + 1 >= window ? t + 1 - window : 0;
    const std::size_t span_len = t + 1 - lo;
    const std::size_t count = prefix[t + 1] - prefix[lo];
    const bool is_full = count == window;
    full[t] = is_full;
    if (config.warmup == WarmupPolicy::mark ? !is_full : count < min_points) continue;

    if (count == span_len) {
      const auto& w = weights_for(span_len);
      const std::span<const double> xs = x.subspan(lo, span_len);
      level[t] = dot(w.level, xs);
      slope[t] = dot(w.slope, xs);
    } else {
      tau.clear();
      vals.clear();
      for (std::size_t i = lo; i <= t; ++i) {
        if (!defined[i]) continue;
        tau.push_back(static_cast<double>(i) - static_cast<double>(t));
        vals.push_back(x[i]);
      }
      const auto w = solve_weights(tau, config.degree);
      level[t] = dot(w.level, vals);
      slope[t] = dot(w.slope, vals);
    }
    ok[t] = true;
  }

  std::vector<bool> slope_ok = ok;
  if (config.degree == 0) {
    std::fill(slope_ok.begin(), slope_ok.end(), false);
  }
  const Unit slope_unit = series.unit() == Unit::log_price ? Unit::return_per_day : series.unit();
  return LocalFit{series.derive(std::move(level), std::move(ok), series.unit()),
                  series.derive(std::move(slope), std::move(slope_ok), slope_unit),
                  std::move(full)};
}

void for_each_window(const Series& series, const TrendConfig& config,
                     const std::function<void(std::size_t, std::span<const double>,
                                              std::span<const double>)>& visit) {
  config.validate();
  const auto window = static_cast<std::size_t>(config.window);
  const auto min_points = static_cast<std::size_t>(config.degree) + 1;
  const auto x = series.values();
  std::vector<double> tau, vals;
  for (std::size_t t = 0; t < series.size(); ++t) {
    tau.clear();
    vals.clear();
    for (std::size_t i = t + 1 >= window ? t + 1 - window : 0; i <= t; ++i) {
      if (!series.is_defined(i)) continue;
      tau.push_back(static_cast<double>(i) - static_cast<double>(t));
      vals.push_back(x[i]);
    }
    const bool ok = config.warmup == WarmupPolicy::mark ? vals.size() == window : vals.size() >= min_points;
    if (ok) visit(t, tau, vals);
  }
}

namespace {

void require_output(const Series& s) {
  if (s.defined_count() == 0)
    throw Error(ErrorCode::series_too_short,
                "series too short for the trend window: no sample can be estimated");
}

}  // namespace

Series estimate_trend(const Series& series, const TrendConfig& config) {
  auto fit = local_fit(series, config);
  require_output(fit.level);
  return std::move(fit.level);
}

Series estimate_derivative(const Series& series, const TrendConfig& config) {
  config.validate();
  if (config.degree < 1)
    throw Error(ErrorCode::degree_too_low, "derivative estimation needs polynomial degree >= 1");
  auto fit = local_fit(series, config);
  require_output(fit.slope);
  return std::move(fit.slope);
}

DecomposedSeries decompose(const Series& series, const TrendConfig& config) {
  auto fit = local_fit(series, config);
  require_output(fit.level);
  const auto x = series.values();
  const auto trend = fit.level.values();
  std::vector<double> fluct(series.size(), 0.0);
  for (std::size_t i = 0; i < series.size(); ++i) {
    if (!fit.level.is_defined(i)) continue;
    // Pick the residual so that trend + fluctuation reproduces x bit-exactly
    // whenever some double allows it.
    double f = x[i] - trend[i];
    if (trend[i] + f != x[i]) {
      for (double dir : {1.0, -1.0}) {
        double g = f;
        for (int step = 0; step < 4 && trend[i] + g != x[i]; ++step)
          g = std::nextafter(g, dir * HUGE_VAL);
        if (trend[i] + g == x[i]) {
          f = g;
          break;
        }
      }
    }
    fluct[i] = f;
  }
  std::vector<bool> warm(series.size());
  for (std::size_t i = 0; i < warm.size(); ++i) warm[i] = !fit.full_window[i];
  auto fluct_series = series.derive(std::move(fluct), fit.level.defined(), series.unit());
  return DecomposedSeries{std::move(fit.level), std::move(fit.slope),
                          std::move(fluct_series), std::move(warm)};
}

}  // namespace trendvol
