#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>

#include "CLI11.hpp"
#include "trendvol/forecast.hpp"
#include "trendvol/frame.hpp"
#include "trendvol/indicators.hpp"

namespace trendvol::cli {
namespace {

constexpr double kTradingDays = 252.0;

struct Common {
  int window = 60;
  int degree = 2;
  int delta_t = 1;
  std::string warmup = "grow";
  bool annualize = false;
  std::string format = "csv";
  std::string output;
  std::string fill = "none";
};

struct ClipArgs {
  bool modified = false;
  double k = 6.0;
  int clamp_window = 250;
};

struct ForecastArgs {
  int horizon = 0;
  std::string order = "taylor1";
};

struct AnalyzeArgs {
  Common common;
  ClipArgs clip;
  ForecastArgs forecast;
  std::string input;
  double variance_floor = 0.0;
};

struct BetaArgs {
  Common common;
  std::string asset;
  std::string market;
  double epsilon = kDefaultBetaEpsilon;
  bool instantaneous = false;
  int curve_window = 0;
  int curve_degree = -1;
  double risk_free = 0.0;
};

struct SharpeArgs {
  Common common;
  ClipArgs clip;
  ForecastArgs forecast;
  std::string input;
  double variance_floor = 0.0;
  double epsilon_vol = kDefaultVolatilityEpsilon;
  double risk_free = 0.0;
};

void add_common(CLI::App& cmd, Common& c) {
  cmd.add_option("--window", c.window, "Trend window length in samples")->capture_default_str();
  cmd.add_option("--degree", c.degree, "Local polynomial degree")->capture_default_str();
  cmd.add_option("--delta-t", c.delta_t, "Return horizon in samples")->capture_default_str();
  cmd.add_option("--warmup", c.warmup, "Warm-up policy")
      ->check(CLI::IsMember({"grow", "mark"}))
      ->capture_default_str();
  cmd.add_flag("--annualize", c.annualize, "Scale returns by 252 and volatilities by sqrt(252)");
  cmd.add_option("--format", c.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  cmd.add_option("--output", c.output, "Output file (default: stdout)");
  cmd.add_option("--fill", c.fill, "Fill undefined ratio cells")
      ->check(CLI::IsMember({"none", "forward"}))
      ->capture_default_str();
}

void add_clip(CLI::App& cmd, ClipArgs& c) {
  cmd.add_flag("--modified", c.modified, "Clip outlying returns (median +- k*MAD)");
  cmd.add_option("--k", c.k, "Clip band multiplier")->capture_default_str();
  cmd.add_option("--clamp-window", c.clamp_window, "Clip look-back window")->capture_default_str();
}

void add_forecast(CLI::App& cmd, ForecastArgs& f) {
  cmd.add_option("--forecast", f.horizon, "Forecast horizon in samples (0: none)")->capture_default_str();
  cmd.add_option("--forecast-order", f.order, "Extrapolation rule")
      ->check(CLI::IsMember({"level", "taylor1"}))
      ->capture_default_str();
}

TrendConfig trend_config(const Common& c) {
  TrendConfig cfg{c.window, c.degree, c.warmup == "mark" ? WarmupPolicy::mark : WarmupPolicy::grow};
  cfg.validate();
  return cfg;
}

ClipOptions clip_options(const ClipArgs& c) {
  ClipOptions opt{c.modified, c.k, c.clamp_window};
  if (opt.enabled) opt.validate();
  return opt;
}

ForecastConfig forecast_config(const ForecastArgs& f, const TrendConfig& trend) {
  ForecastConfig cfg{f.horizon, f.order == "level" ? ForecastOrder::level : ForecastOrder::taylor1, trend};
  cfg.validate();
  return cfg;
}

void echo_common(IndicatorFrame& frame, const std::string& command, const Common& c) {
  frame.set_meta("command", command);
  frame.set_meta("window", static_cast<long long>(c.window));
  frame.set_meta("degree", static_cast<long long>(c.degree));
  frame.set_meta("warmup", c.warmup);
  frame.set_meta("delta_t", static_cast<long long>(c.delta_t));
  frame.set_meta("annualize", c.annualize);
  frame.set_meta("fill", c.fill);
  frame.set_meta("time_unit", std::string(c.annualize ? "year (252 trading days)" : "trading day"));
}

void echo_clip(IndicatorFrame& frame, const ClipArgs& c) {
  frame.set_meta("modified", c.modified);
  frame.set_meta("k", c.k);
  frame.set_meta("clamp_window", static_cast<long long>(c.clamp_window));
}

void echo_forecast(IndicatorFrame& frame, const ForecastArgs& f) {
  frame.set_meta("horizon", static_cast<long long>(f.horizon));
  frame.set_meta("forecast_order", f.order);
}

std::vector<Date> frame_dates(const Series& base, int horizon) {
  std::vector<Date> dates(base.timestamps().begin(), base.timestamps().end());
  if (horizon > 0) {
    const auto extra = next_weekdays(dates.back(), static_cast<std::size_t>(horizon));
    dates.insert(dates.end(), extra.begin(), extra.end());
  }
  return dates;
}

void emit(const IndicatorFrame& frame, const Common& c, std::ostream& out) {
  const auto format = c.format == "json" ? FrameFormat::json : FrameFormat::csv;
  if (c.output.empty()) {
    write_frame(frame, format, out);
    return;
  }
  std::ofstream file(c.output, std::ios::binary);
  if (!file) throw Error(ErrorCode::io_error, "cannot open output file " + c.output);
  write_frame(frame, format, file);
}

int analyze(const AnalyzeArgs& a, std::ostream& out) {
  const auto trend = trend_config(a.common);
  const MomentConfig moments{trend, a.variance_floor};
  moments.validate();
  const auto clip = clip_options(a.clip);
  std::optional<ForecastConfig> fcfg;
  if (a.forecast.horizon > 0) fcfg = forecast_config(a.forecast, trend);

  const auto prices = load_csv(a.input);
  const auto parts = decompose(prices, trend);
  const auto vol = asset_volatility(prices, a.common.delta_t, moments, clip);

  const double ret_scale = a.common.annualize ? kTradingDays : 1.0;
  const double vol_scale = a.common.annualize ? std::sqrt(kTradingDays) : 1.0;

  IndicatorFrame frame(frame_dates(prices, a.forecast.horizon));
  frame.add_column("price", prices);
  frame.add_column("trend", parts.trend);
  frame.add_column("fluctuation", parts.fluctuation);
  frame.add_column("return", normalized_return(prices, a.common.delta_t).values, ret_scale);
  if (clip.enabled) frame.add_column("modified_return", vol.returns.values, ret_scale);
  frame.add_column("mean_return", vol.mean.values, ret_scale);
  if (trend.degree >= 1)
    frame.add_column("instantaneous_mean_return", instantaneous_mean_return(prices, trend).values, ret_scale);
  frame.add_column("volatility", vol.volatility, vol_scale);
  frame.add_column("abs_dev_volatility", vol.abs_deviation, vol_scale);
  if (fcfg) frame.add_column("forecast_volatility", forecast_series(vol.volatility, *fcfg), vol_scale);

  echo_common(frame, "analyze", a.common);
  frame.set_meta("input", a.input);
  echo_clip(frame, a.clip);
  frame.set_meta("variance_floor", a.variance_floor);
  echo_forecast(frame, a.forecast);
  emit(frame, a.common, out);
  return kExitOk;
}

int beta_cmd(const BetaArgs& a, std::ostream& out) {
  BetaConfig cfg;
  cfg.trend = trend_config(a.common);
  if (a.curve_window > 0 || a.curve_degree >= 0) {
    TrendConfig curve = cfg.trend;
    if (a.curve_window > 0) curve.window = a.curve_window;
    if (a.curve_degree >= 0) curve.degree = a.curve_degree;
    cfg.curve_trend = curve;
  }
  cfg.epsilon = a.epsilon;
  cfg.validate();

  const auto pair = align(load_csv(a.asset), load_csv(a.market));
  const auto& asset = pair.left;
  const auto& market = pair.right;
  const auto b = a.instantaneous ? instantaneous_beta(asset, market, cfg)
                                 : beta(asset, market, a.common.delta_t, cfg);
  const auto tr = treynor_ratio(b.asset_curve, b, a.risk_free);
  const double ret_scale = a.common.annualize ? kTradingDays : 1.0;

  IndicatorFrame frame(frame_dates(asset, 0));
  frame.add_column("asset", asset);
  frame.add_column("market", market);
  const std::string curve = a.instantaneous ? "instantaneous_mean_return" : "mean_return";
  frame.add_column(curve + "_asset", b.asset_curve.values, ret_scale);
  frame.add_column(curve + "_market", b.market_curve.values, ret_scale);
  frame.add_column("beta", b.values);
  frame.add_column("treynor", tr, ret_scale);
  if (a.common.fill == "forward") {
    frame.fill_forward("beta");
    frame.fill_forward("treynor");
  }

  echo_common(frame, "beta", a.common);
  frame.set_meta("asset", a.asset);
  frame.set_meta("market", a.market);
  frame.set_meta("instantaneous", a.instantaneous);
  frame.set_meta("curve_window", static_cast<long long>(cfg.curve().window));
  frame.set_meta("curve_degree", static_cast<long long>(cfg.curve().degree));
  frame.set_meta("epsilon", a.epsilon);
  frame.set_meta("risk_free", a.risk_free);
  frame.set_meta("aligned_samples", static_cast<long long>(pair.report.kept_count));
  frame.set_meta("dropped_asset", static_cast<long long>(pair.report.dropped_left));
  frame.set_meta("dropped_market", static_cast<long long>(pair.report.dropped_right));
  emit(frame, a.common, out);
  return kExitOk;
}

int sharpe_cmd(const SharpeArgs& a, std::ostream& out) {
  const auto trend = trend_config(a.common);
  const MomentConfig moments{trend, a.variance_floor};
  moments.validate();
  const auto clip = clip_options(a.clip);
  std::optional<ForecastConfig> fcfg;
  if (a.forecast.horizon > 0) fcfg = forecast_config(a.forecast, trend);
  if (!(a.epsilon_vol > 0.0)) throw Error(ErrorCode::invalid_config, "--epsilon-vol must be positive");

  const auto prices = load_csv(a.input);
  const auto vol = asset_volatility(prices, a.common.delta_t, moments, clip);
  const auto sr = sharpe_ratio(vol, a.epsilon_vol, a.risk_free);

  const double ret_scale = a.common.annualize ? kTradingDays : 1.0;
  const double vol_scale = a.common.annualize ? std::sqrt(kTradingDays) : 1.0;

  IndicatorFrame frame(frame_dates(prices, a.forecast.horizon));
  frame.add_column("price", prices);
  frame.add_column("mean_return", vol.mean.values, ret_scale);
  frame.add_column("volatility", vol.volatility, vol_scale);
  frame.add_column("sharpe", sr, vol_scale);
  if (fcfg) frame.add_column("forecast_sharpe", forecast_series(sr, *fcfg), vol_scale);
  if (a.common.fill == "forward") frame.fill_forward("sharpe");

  echo_common(frame, "sharpe", a.common);
  frame.set_meta("input", a.input);
  echo_clip(frame, a.clip);
  frame.set_meta("variance_floor", a.variance_floor);
  frame.set_meta("epsilon_vol", a.epsilon_vol);
  frame.set_meta("risk_free", a.risk_free);
  echo_forecast(frame, a.forecast);
  emit(frame, a.common, out);
  return kExitOk;
}

}  // namespace

int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Model-free trends, volatility, beta, Sharpe and Treynor ratios for daily prices",
               "trendvol"};
  app.require_subcommand(1);

  AnalyzeArgs analyze_args;
  auto* an = app.add_subcommand("analyze", "Single-asset indicator frame");
  an->add_option("--input", analyze_args.input, "Price CSV (date,close)")->required();
  add_common(*an, analyze_args.common);
  add_clip(*an, analyze_args.clip);
  add_forecast(*an, analyze_args.forecast);
  an->add_option("--variance-floor", analyze_args.variance_floor, "Variance clamp")->capture_default_str();

  BetaArgs beta_args;
  auto* be = app.add_subcommand("beta", "Beta and Treynor ratio against a market series");
  be->add_option("--asset", beta_args.asset, "Asset price CSV")->required();
  be->add_option("--market", beta_args.market, "Market price CSV")->required();
  add_common(*be, beta_args.common);
  be->add_option("--epsilon", beta_args.epsilon, "Curve-slope threshold")->capture_default_str();
  be->add_flag("--instantaneous", beta_args.instantaneous, "Use instantaneous mean returns");
  be->add_option("--curve-window", beta_args.curve_window, "Window for differentiating mean-return curves");
  be->add_option("--curve-degree", beta_args.curve_degree, "Degree for differentiating mean-return curves");
  be->add_option("--risk-free", beta_args.risk_free, "Per-day risk-free rate")->capture_default_str();

  SharpeArgs sharpe_args;
  auto* sh = app.add_subcommand("sharpe", "Sharpe ratio with optional forecast");
  sh->add_option("--input", sharpe_args.input, "Price CSV (date,close)")->required();
  add_common(*sh, sharpe_args.common);
  add_clip(*sh, sharpe_args.clip);
  add_forecast(*sh, sharpe_args.forecast);
  sh->add_option("--variance-floor", sharpe_args.variance_floor, "Variance clamp")->capture_default_str();
  sh->add_option("--epsilon-vol", sharpe_args.epsilon_vol, "Volatility threshold")->capture_default_str();
  sh->add_option("--risk-free", sharpe_args.risk_free, "Per-day risk-free rate")->capture_default_str();

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  try {
    if (an->parsed()) return analyze(analyze_args, out);
    if (be->parsed()) return beta_cmd(beta_args, out);
    return sharpe_cmd(sharpe_args, out);
  } catch (const Error& e) {
    err << "error: " << to_string(e.code());
    if (e.location()) {
      const bool file_error = e.code() == ErrorCode::parse_error || e.code() == ErrorCode::unordered_dates ||
                              e.code() == ErrorCode::duplicate_date || e.code() == ErrorCode::non_positive_price;
      err << (file_error ? " at line " : " at sample ") << *e.location();
    }
    err << ": " << e.what() << '\n';
    if (e.code() == ErrorCode::invalid_config || e.code() == ErrorCode::degree_too_low) {
      err << '\n' << app.help();
      return kExitUsage;
    }
    return kExitData;
  }
}

}  // namespace trendvol::cli
