#pragma once

#include <functional>
#include <span>
#include <vector>

#include "trendvol/series.hpp"

namespace trendvol {

enum class WarmupPolicy {
  grow,  ///< shrink the window at the series start, down to degree+1 points
  mark,  ///< leave samples undefined until a full window of defined points exists
};

struct TrendConfig {
  int window = 60;
  int degree = 2;
  WarmupPolicy warmup = WarmupPolicy::grow;

  /// Throws invalid_config unless window >= 2, degree >= 0, degree < window.
  void validate() const;
};

/// Least-squares polynomial over local time tau = -(w-1), ..., -1, 0 (0 at the
/// newest sample). Returns c_0..c_p; c_0 is the fitted level at the newest
/// sample and c_1 its slope per sample. Solved by Householder QR.
std::vector<double> fit_window(std::span<const double> values, int degree);

/// Same fit at arbitrary local times (used for windows with masked samples).
std::vector<double> fit_points(std::span<const double> tau,
                               std::span<const double> values, int degree);

/// Causal trailing-window fit of every sample: level (c_0) and slope (c_1).
/// A sample is undefined when its window holds fewer than degree+1 defined
/// points (grow) or is not a full window of defined points (mark).
/// `full_window[i]` is true when sample i was fitted on `window` defined points.
struct LocalFit {
  Series level;
  Series slope;
  std::vector<bool> full_window;
};

LocalFit local_fit(const Series& series, const TrendConfig& config);

/// Calls `visit(t, tau, values)` for every sample whose trailing window
/// qualifies under the warm-up rules of local_fit(), with the defined
/// points of that window in local time.
void for_each_window(const Series& series, const TrendConfig& config,
                     const std::function<void(std::size_t, std::span<const double>,
                                              std::span<const double>)>& visit);

/// E(X)(t). Throws series_too_short when no sample can be fitted.
Series estimate_trend(const Series& series, const TrendConfig& config);

/// d/dt E(X)(t), in value units per day. Throws degree_too_low for degree 0.
Series estimate_derivative(const Series& series, const TrendConfig& config);

struct DecomposedSeries {
  Series trend;
  Series derivative;   ///< zero and undefined everywhere when degree == 0
  Series fluctuation;  ///< series - trend
  std::vector<bool> warmup_mask;  ///< true where the fit did not use a full window
};

DecomposedSeries decompose(const Series& series, const TrendConfig& config);

}  // namespace trendvol
