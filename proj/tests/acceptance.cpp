// Acceptance suite: prints one PASS/FAIL line per criterion and exits
// non-zero when any criterion fails.

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "cli.hpp"
#include "oracle.hpp"
#include "trendvol/forecast.hpp"
#include "trendvol/frame.hpp"
#include "trendvol/indicators.hpp"

using namespace trendvol;

namespace {

// Tolerances and limits.
constexpr double kOracleRelTol = 1e-8;
constexpr double kOracleSeconds = 10.0;
constexpr double kExactTol = 1e-9;
constexpr double kMomentTol = 1e-9;
constexpr double kGbmSigma = 0.0126;
constexpr double kGbmRelTol = 0.15;
constexpr int kGbmMinHits = 45;
constexpr double kGbmSeconds = 30.0;
constexpr double kBetaRelTol = 0.01;
constexpr double kScaleTol = 1e-12;
constexpr double kThroughputSeconds = 1.0;

struct Outcome {
  bool pass;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(const char* format, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, format, a, b, c);
  return buf;
}

Series scaled(const Series& s, double c) {
  std::vector<double> v(s.values().begin(), s.values().end());
  for (auto& x : v) x *= c;
  return Series::from_values(v);
}

// 1. Trend and derivative against per-window normal equations.
Outcome oracle_equivalence() {
  const auto start = Clock::now();
  double worst = 0.0;
  std::size_t compared = 0;
  bool masks_match = true;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto raw = oracle::random_values(1000 + seed, 300, 1.0, 100.0);
    const auto x = Series::from_values(raw);
    for (int p = 0; p <= 3; ++p) {
      for (int n : {5, 20, 60}) {
        const TrendConfig cfg{n, p, WarmupPolicy::grow};
        const auto fit = local_fit(x, cfg);
        const auto ref = oracle::brute_force_trend(raw, n, p);
        for (std::size_t t = 0; t < raw.size(); ++t) {
          masks_match &= fit.level.is_defined(t) == ref.defined[t];
          if (!ref.defined[t]) continue;
          worst = std::max(worst, std::abs(fit.level[t] - ref.level[t]) / std::max(1.0, std::abs(ref.level[t])));
          if (p >= 1)
            worst = std::max(worst, std::abs(fit.slope[t] - ref.slope[t]) / std::max(1.0, std::abs(ref.slope[t])));
          ++compared;
        }
      }
    }
  }
  const double secs = seconds_since(start);
  return {masks_match && worst <= kOracleRelTol && secs < kOracleSeconds,
          fmt("max rel err %.2e over %.0f samples, %.2f s", worst, static_cast<double>(compared), secs)};
}

// 2. Polynomials of degree <= p leave no fluctuation; lines extrapolate exactly.
Outcome polynomial_exactness() {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> coef(-2.0, 2.0);
  double worst_fluct = 0.0, worst_fc = 0.0;
  for (int p = 0; p <= 2; ++p) {
    for (int d = 0; d <= p; ++d) {
      for (int trial = 0; trial < 10; ++trial) {
        const double c0 = 5.0 + coef(rng), c1 = coef(rng), c2 = coef(rng);
        std::vector<double> v(300);
        for (std::size_t i = 0; i < v.size(); ++i) {
          const double u = static_cast<double>(i) / 100.0;
          v[i] = c0 + (d >= 1 ? c1 * u : 0.0) + (d >= 2 ? c2 * u * u : 0.0);
        }
        const auto x = Series::from_values(v);
        for (int n : {5, 20, 60})
          for (auto policy : {WarmupPolicy::grow, WarmupPolicy::mark}) {
            const auto parts = decompose(x, {n, p, policy});
            for (std::size_t i = 0; i < v.size(); ++i)
              if (parts.fluctuation.is_defined(i)) worst_fluct = std::max(worst_fluct, std::abs(parts.fluctuation[i]));
          }
      }
    }
  }
  std::vector<double> line(300);
  for (std::size_t i = 0; i < line.size(); ++i) line[i] = 2.0 + 3.0 * static_cast<double>(i);
  const auto x = Series::from_values(line);
  for (int p = 1; p <= 2; ++p)
    for (int n : {5, 20, 60})
      for (int h : {1, 5, 20}) {
        const auto f = forecast_series(x, {h, ForecastOrder::taylor1, {n, p, WarmupPolicy::grow}});
        for (std::size_t j = 0; j < f.size(); ++j)
          if (f.is_defined(j)) worst_fc = std::max(worst_fc, std::abs(f[j] - (2.0 + 3.0 * static_cast<double>(j))));
      }
  return {worst_fluct <= kExactTol && worst_fc <= kExactTol,
          fmt("max |fluctuation| %.2e, max forecast err %.2e", worst_fluct, worst_fc)};
}

// 3. Covariance symmetry, cov(x,x) = var(x), homogeneity and shift invariance.
Outcome moment_identities() {
  double sym = 0.0, diag = 0.0, homog = 0.0, shift = 0.0;
  const MomentConfig cfg{{20, 2, WarmupPolicy::grow}, 0.0};
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto x = Series::from_values(oracle::random_values(2000 + seed, 300, 1.0, 100.0));
    const auto y = Series::from_values(oracle::random_values(3000 + seed, 300, 1.0, 100.0));
    const auto cxy = covariance(x, y, cfg);
    const auto cyx = covariance(y, x, cfg);
    const auto cxx = covariance(x, x, cfg);
    const auto var = variance(x, cfg);
    const auto vol = volatility(x, cfg);
    for (std::size_t i = 0; i < x.size(); ++i) {
      sym = std::max(sym, std::abs(cxy[i] - cyx[i]));
      diag = std::max(diag, std::abs(cxx[i] - var.unclamped[i]));
    }
    for (double a : {-3.0, 0.5, 7.0}) {
      const auto va = volatility(scaled(x, a), cfg);
      for (std::size_t i = 0; i < x.size(); ++i) homog = std::max(homog, std::abs(va.value[i] - std::abs(a) * vol.value[i]));
    }
    for (double c : {-0.5, 100.0}) {
      std::vector<double> v(x.values().begin(), x.values().end());
      for (auto& e : v) e += c;
      const auto vc = volatility(Series::from_values(v), cfg);
      for (std::size_t i = 0; i < x.size(); ++i) shift = std::max(shift, std::abs(vc.value[i] - vol.value[i]));
    }
  }
  const double worst = std::max({sym, diag, homog, shift});
  return {worst <= kMomentTol, fmt("symmetry %.1e, diagonal %.1e, ", sym, diag) +
                                   fmt("homogeneity %.1e, shift %.1e", homog, shift)};
}

// 4. Volatility of daily returns recovers the GBM sigma.
Outcome gbm_volatility() {
  const auto start = Clock::now();
  int hits = 0;
  double worst = 0.0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto x = Series::from_values(oracle::gbm(4000 + seed, 5000, 0.0003, kGbmSigma));
    const auto v = asset_volatility(x, 1, {{120, 2, WarmupPolicy::grow}, 0.0});
    const double rel = std::abs(oracle::median(oracle::defined_values(v.volatility)) - kGbmSigma) / kGbmSigma;
    worst = std::max(worst, rel);
    hits += rel <= kGbmRelTol;
  }
  const double secs = seconds_since(start);
  return {hits >= kGbmMinHits && secs < kGbmSeconds,
          fmt("%.0f/50 seeds within 15%%, worst rel err %.3f, %.2f s", hits, worst, secs)};
}

// 5. Beta of ln(asset) = b ln(market) + const.
Outcome beta_recovery() {
  constexpr double kPi = 3.14159265358979323846;
  std::string detail;
  bool pass = true;
  for (double b : {0.5, 2.0}) {
    std::vector<double> a(1200), m(1200);
    for (std::size_t i = 0; i < a.size(); ++i) {
      const double t = static_cast<double>(i);
      const double lm = 4.6 + 0.3 * std::sin(2 * kPi * t / 400.0) + 0.0002 * t;
      m[i] = std::exp(lm);
      a[i] = std::exp(b * lm - 0.25);
    }
    BetaConfig cfg;
    cfg.trend = {60, 2, WarmupPolicy::grow};
    const auto bs = beta(Series::from_values(a), Series::from_values(m), 20, cfg);
    const auto vals = oracle::defined_values(bs.values);
    const double med = vals.empty() ? NAN : oracle::median(vals);
    pass &= !vals.empty() && std::abs(med - b) <= kBetaRelTol * b;
    detail += fmt("b=%.1f median %.9f over %.0f samples; ", b, med, static_cast<double>(vals.size()));
  }
  detail.resize(detail.size() - 2);
  return {pass, detail};
}

// 6. Price scaling leaves returns, volatility, beta, Sharpe and Treynor unchanged.
Outcome scale_invariance() {
  double ret = 0.0, vol = 0.0, beta_err = 0.0, sr = 0.0, tr = 0.0;
  bool masks = true, within = true;
  const TrendConfig trend{60, 2, WarmupPolicy::grow};
  const MomentConfig mc{trend, 0.0};
  BetaConfig bc;
  bc.trend = trend;
  const SharpeConfig sc{mc, {}, kDefaultVolatilityEpsilon, 0.0};
  auto compare = [&](const Series& a, const Series& b, double& worst, const std::function<double(std::size_t)>& tol) {
    for (std::size_t i = 0; i < a.size(); ++i) {
      masks &= a.is_defined(i) == b.is_defined(i);
      if (!a.is_defined(i)) continue;
      const double e = std::abs(a[i] - b[i]);
      worst = std::max(worst, e);
      within &= e <= tol(i);
    }
  };
  const auto abs_tol = [](std::size_t) { return kScaleTol; };
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto a = Series::from_values(oracle::gbm(5000 + seed, 1000, 0.0003, 0.015));
    const auto m = Series::from_values(oracle::gbm(6000 + seed, 1000, 0.0004, 0.010));
    const auto b0 = beta(a, m, 20, bc);
    const auto t0 = treynor(a, m, 20, bc);
    const auto s0 = sharpe(a, 20, sc);
    const auto v0 = asset_volatility(a, 20, mc);
    for (double c : {0.01, 3.7, 1e4}) {
      const auto ac = scaled(a, c);
      compare(log_return(a, 20).values, log_return(ac, 20).values, ret, abs_tol);
      compare(arithmetic_return(a, 20).values, arithmetic_return(ac, 20).values, ret, abs_tol);
      compare(normalized_return(a, 20).values, normalized_return(ac, 20).values, ret, abs_tol);
      compare(mean_return(a, 20, trend).values, mean_return(ac, 20, trend).values, ret, abs_tol);
      compare(instantaneous_mean_return(a, trend).values, instantaneous_mean_return(ac, trend).values, ret, abs_tol);
      const auto v1 = asset_volatility(ac, 20, mc);
      compare(v0.volatility, v1.volatility, vol, abs_tol);
      compare(v0.abs_deviation, v1.abs_deviation, vol, abs_tol);
      // ratios amplify input rounding by their magnitude; Treynor also by 1 / beta
      const auto b1 = beta(ac, scaled(m, 1.0 / c), 20, bc);
      compare(b0.values, b1.values, beta_err,
              [&](std::size_t i) { return kScaleTol * std::max(1.0, std::abs(b0.values[i])); });
      // volatility comes from r - rbar, whose rounding is amplified by |r| / vol ~ 1 + |SR|
      compare(s0, sharpe(ac, 20, sc), sr, [&](std::size_t i) {
        const double m = std::abs(s0[i]);
        return kScaleTol * (1.0 + m * (1.0 + m));
      });
      compare(t0, treynor(ac, scaled(m, 1.0 / c), 20, bc), tr, [&](std::size_t i) {
        const double bb = std::abs(b0.values[i]);
        return kScaleTol * (1.0 + std::abs(t0[i]) * (1.0 + std::max(1.0, bb) / bb));
      });
    }
  }
  return {masks && within, fmt("max abs diff: returns %.1e, volatility %.1e, beta %.1e, ", ret, vol, beta_err) +
                               fmt("Sharpe %.1e, Treynor %.1e", sr, tr)};
}

// 7. Changing sample k leaves every output before k (targets before k + h) intact.
std::vector<Series> causal_outputs(const std::vector<double>& a, const std::vector<double>& m) {
  const auto x = Series::from_values(a);
  const auto y = Series::from_values(m);
  const TrendConfig trend{20, 2, WarmupPolicy::grow};
  const MomentConfig mc{trend, 0.0};
  BetaConfig bc;
  bc.trend = trend;
  const auto parts = decompose(x, trend);
  const auto vol = asset_volatility(x, 5, mc);
  const auto clipped = asset_volatility(x, 1, mc, {true, 3.0, 30});
  const auto b = beta(x, y, 5, bc);
  return {parts.trend,
          parts.derivative,
          parts.fluctuation,
          log_return(x, 5).values,
          arithmetic_return(x, 5).values,
          normalized_return(x, 5).values,
          mean_return(x, 5, trend).values,
          instantaneous_mean_return(x, trend).values,
          vol.volatility,
          vol.moment_form,
          vol.abs_deviation,
          clipped.returns.values,
          clipped.volatility,
          covariance(x, y, mc),
          b.values,
          instantaneous_beta(x, y, bc).values,
          treynor(x, y, 5, bc),
          instantaneous_treynor(x, y, bc),
          sharpe(x, 5, {mc, {}, kDefaultVolatilityEpsilon, 0.0}),
          forecast_series(vol.volatility, {3, ForecastOrder::taylor1, trend}),
          forecast_volatility(x, 5, mc, {3, ForecastOrder::level, trend})};
}

Outcome causality() {
  constexpr std::size_t kN = 100;
  constexpr std::size_t kForecastOutputs = 2;
  constexpr std::size_t kHorizon = 3;
  const auto a = oracle::gbm(7001, kN, 0.0005, 0.02);
  const auto m = oracle::gbm(7002, kN, 0.0003, 0.01);
  const auto base = causal_outputs(a, m);
  std::size_t violations = 0, checked = 0;
  for (int which = 0; which < 2; ++which) {
    for (std::size_t k = 0; k < kN; ++k) {
      auto a2 = a, m2 = m;
      (which == 0 ? a2 : m2)[k] *= 1.7;
      const auto out = causal_outputs(a2, m2);
      for (std::size_t o = 0; o < out.size(); ++o) {
        const bool is_forecast = o + kForecastOutputs >= out.size();
        const std::size_t limit = std::min(out[o].size(), k + (is_forecast ? kHorizon : 0));
        for (std::size_t j = 0; j < limit; ++j) {
          ++checked;
          if (out[o].is_defined(j) != base[o].is_defined(j) ||
              std::bit_cast<std::uint64_t>(out[o][j]) != std::bit_cast<std::uint64_t>(base[o][j]))
            ++violations;
        }
      }
    }
  }
  return {violations == 0, fmt("%.0f violations in %.0f comparisons over %.0f mutations",
                               static_cast<double>(violations), static_cast<double>(checked), 2.0 * kN)};
}

std::filesystem::path write_prices(const std::string& name, const std::vector<double>& prices) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream out(path);
  out << "date,close\n";
  const auto dates = daily_dates(prices.size(), std::chrono::year{1970} / 1 / 2);
  for (std::size_t i = 0; i < prices.size(); ++i) out << format_date(dates[i]) << ',' << format_double(prices[i]) << '\n';
  return path;
}

// 8. End-to-end analyze on an IBM-scale history.
Outcome throughput() {
  const auto path = write_prices("trendvol_acceptance_12000.csv", oracle::gbm(8001, 12000, 0.0003, 0.0126));
  std::ostringstream out, err;
  const auto start = Clock::now();
  const int code = cli::run({"analyze", "--input", path.string(), "--window", "120", "--degree", "2", "--delta-t",
                             "20", "--forecast", "20"},
                            out, err);
  const double secs = seconds_since(start);
  std::filesystem::remove(path);
  return {code == cli::kExitOk && secs < kThroughputSeconds,
          fmt("exit %.0f, %.3f s, %.0f bytes", code, secs, static_cast<double>(out.str().size()))};
}

// 9. CSV write then read reproduces every bit.
Outcome csv_round_trip() {
  std::size_t cells = 0, mismatches = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    std::mt19937_64 rng(9000 + seed);
    const auto rows = 1 + rng() % 80;
    IndicatorFrame frame(daily_dates(rows));
    for (std::size_t c = 0, cols = 1 + rng() % 8; c < cols; ++c) {
      Column col{"c" + std::to_string(c), {}, {}};
      for (std::size_t r = 0; r < rows; ++r) {
        double v;
        do v = std::bit_cast<double>(rng());
        while (!std::isfinite(v));
        col.defined.push_back(rng() % 7 != 0);
        col.values.push_back(col.defined.back() ? v : 0.0);
      }
      frame.add_column(std::move(col));
    }
    frame.set_meta("seed", static_cast<long long>(seed));
    std::ostringstream out;
    write_frame(frame, FrameFormat::csv, out);
    std::istringstream in(out.str());
    const auto back = read_frame_csv(in);
    if (back.dates() != frame.dates() || back.columns().size() != frame.columns().size()) {
      ++mismatches;
      continue;
    }
    for (std::size_t c = 0; c < frame.columns().size(); ++c) {
      const auto& x = frame.columns()[c];
      const auto& y = back.columns()[c];
      for (std::size_t r = 0; r < rows; ++r) {
        ++cells;
        if (x.defined[r] != y.defined[r] ||
            (x.defined[r] && std::bit_cast<std::uint64_t>(x.values[r]) != std::bit_cast<std::uint64_t>(y.values[r])))
          ++mismatches;
      }
    }
  }
  return {mismatches == 0,
          fmt("%.0f mismatches in %.0f cells", static_cast<double>(mismatches), static_cast<double>(cells))};
}

// 10. A longer Sharpe horizon gives a smoother series: sample variance of
// SR_100 below that of SR_10. The detail line also reports roughness, the
// variance of first differences over the variance, as a shape diagnostic.
Outcome sharpe_smoothness() {
  const auto path = write_prices("trendvol_acceptance_sharpe.csv", oracle::gbm(10001, 2500, 0.0005, 0.0126));
  struct Stats {
    double variance = NAN;
    double roughness = NAN;
  };
  auto sharpe_stats = [&](const std::string& dt, bool& ok) {
    std::ostringstream out, err;
    ok &= cli::run({"sharpe", "--input", path.string(), "--delta-t", dt}, out, err) == cli::kExitOk;
    std::istringstream in(out.str());
    const auto frame = read_frame_csv(in);
    const auto* col = frame.find("sharpe");
    std::vector<double> v, diff;
    if (col)
      for (std::size_t i = 0; i < col->values.size(); ++i) {
        if (!col->defined[i]) continue;
        if (i > 0 && col->defined[i - 1]) diff.push_back(col->values[i] - col->values[i - 1]);
        v.push_back(col->values[i]);
      }
    Stats s;
    if (v.size() > 2 && diff.size() > 2) {
      s.variance = oracle::sample_variance(v);
      s.roughness = oracle::sample_variance(diff) / s.variance;
    }
    return s;
  };
  bool ok = true;
  const auto s10 = sharpe_stats("10", ok);
  const auto s100 = sharpe_stats("100", ok);
  std::filesystem::remove(path);
  return {ok && s100.variance < s10.variance,
          fmt("var(SR_100) %.4g vs var(SR_10) %.4g; ", s100.variance, s10.variance) +
              fmt("roughness %.3g vs %.3g", s100.roughness, s10.roughness)};
}

}  // namespace

int main() {
  const std::pair<const char*, Outcome (*)()> criteria[] = {
      {"oracle equivalence", oracle_equivalence},
      {"polynomial exactness", polynomial_exactness},
      {"moment identities", moment_identities},
      {"GBM volatility recovery", gbm_volatility},
      {"beta recovery", beta_recovery},
      {"scale invariance", scale_invariance},
      {"causality audit", causality},
      {"analyze throughput", throughput},
      {"CSV round-trip", csv_round_trip},
      {"Sharpe smoothness", sharpe_smoothness},
  };
  int failed = 0;
  int index = 0;
  for (const auto& [name, fn] : criteria) {
    ++index;
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("%s %2d %s: %s\n", o.pass ? "PASS" : "FAIL", index, name, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%d criteria passed\n", index - failed, index);
  return failed == 0 ? 0 : 1;
}
