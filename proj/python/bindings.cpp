#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

#include "trendvol/forecast.hpp"
#include "trendvol/frame.hpp"
#include "trendvol/indicators.hpp"

namespace py = pybind11;
using namespace trendvol;

namespace {

Series make_series(std::vector<double> values, std::optional<std::vector<std::string>> dates,
                   std::optional<std::vector<bool>> defined, Unit unit) {
  std::vector<Date> ts;
  if (dates) {
    for (const auto& d : *dates) {
      const auto parsed = parse_date(d);
      if (!parsed) throw Error(ErrorCode::parse_error, "invalid date '" + d + "'");
      ts.push_back(*parsed);
    }
  } else {
    ts = daily_dates(values.size());
  }
  if (!defined) defined = std::vector<bool>(values.size(), true);
  return Series(std::move(ts), std::move(values), std::move(*defined), unit);
}

// Values with None at undefined samples.
py::list to_list(const Series& s) {
  py::list out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s.is_defined(i)) out.append(s[i]);
    else out.append(py::none());
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Model-free trend, volatility, beta, Sharpe and Treynor estimators";

  static py::handle error_type = py::exception<Error>(m, "TrendvolError", PyExc_ValueError).release();
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      const std::string msg = std::string(to_string(e.code())) + ": " + e.what();
      py::set_error(error_type, msg.c_str());
    }
  });

  py::enum_<Unit>(m, "Unit")
      .value("price", Unit::price)
      .value("log_price", Unit::log_price)
      .value("return_per_day", Unit::return_per_day)
      .value("dimensionless", Unit::dimensionless);

  py::enum_<WarmupPolicy>(m, "WarmupPolicy")
      .value("grow", WarmupPolicy::grow)
      .value("mark", WarmupPolicy::mark);

  py::enum_<ForecastOrder>(m, "ForecastOrder")
      .value("level", ForecastOrder::level)
      .value("taylor1", ForecastOrder::taylor1);

  py::class_<Series>(m, "Series")
      .def(py::init(&make_series), py::arg("values"), py::arg("dates") = py::none(),
           py::arg("defined") = py::none(), py::arg("unit") = Unit::price)
      .def("__len__", &Series::size)
      .def_property_readonly("unit", &Series::unit)
      .def_property_readonly("values", [](const Series& s) { return to_list(s); })
      .def_property_readonly("raw_values", [](const Series& s) {
        return std::vector<double>(s.values().begin(), s.values().end());
      })
      .def_property_readonly("defined", &Series::defined)
      .def_property_readonly("dates", [](const Series& s) {
        std::vector<std::string> out;
        for (auto d : s.timestamps()) out.push_back(format_date(d));
        return out;
      });

  py::class_<TrendConfig>(m, "TrendConfig")
      .def(py::init([](int window, int degree, WarmupPolicy warmup) {
             TrendConfig c{window, degree, warmup};
             c.validate();
             return c;
           }),
           py::arg("window") = 60, py::arg("degree") = 2, py::arg("warmup") = WarmupPolicy::grow)
      .def_readwrite("window", &TrendConfig::window)
      .def_readwrite("degree", &TrendConfig::degree)
      .def_readwrite("warmup", &TrendConfig::warmup);

  py::class_<MomentConfig>(m, "MomentConfig")
      .def(py::init([](TrendConfig trend, double floor) {
             MomentConfig c{trend, floor};
             c.validate();
             return c;
           }),
           py::arg("trend") = TrendConfig{}, py::arg("variance_floor") = 0.0)
      .def_readwrite("trend", &MomentConfig::trend)
      .def_readwrite("variance_floor", &MomentConfig::variance_floor);

  py::class_<ClipOptions>(m, "ClipOptions")
      .def(py::init([](bool enabled, double k, int window) { return ClipOptions{enabled, k, window}; }),
           py::arg("enabled") = false, py::arg("k") = 6.0, py::arg("window") = 250);

  py::class_<ForecastConfig>(m, "ForecastConfig")
      .def(py::init([](int horizon, ForecastOrder order, TrendConfig trend) {
             ForecastConfig c{horizon, order, trend};
             c.validate();
             return c;
           }),
           py::arg("horizon") = 5, py::arg("order") = ForecastOrder::taylor1,
           py::arg("trend") = TrendConfig{});

  py::class_<ReturnSeries>(m, "ReturnSeries")
      .def_readonly("series", &ReturnSeries::values)
      .def_readonly("delta_t", &ReturnSeries::delta_t)
      .def_property_readonly("kind", [](const ReturnSeries& r) { return std::string(to_string(r.kind)); })
      .def_readonly("clipped", &ReturnSeries::clipped);

  py::class_<DecomposedSeries>(m, "DecomposedSeries")
      .def_readonly("trend", &DecomposedSeries::trend)
      .def_readonly("derivative", &DecomposedSeries::derivative)
      .def_readonly("fluctuation", &DecomposedSeries::fluctuation)
      .def_readonly("warmup_mask", &DecomposedSeries::warmup_mask);

  py::class_<AssetVolatility>(m, "AssetVolatility")
      .def_readonly("returns", &AssetVolatility::returns)
      .def_readonly("mean", &AssetVolatility::mean)
      .def_readonly("volatility", &AssetVolatility::volatility)
      .def_readonly("moment_form", &AssetVolatility::moment_form)
      .def_readonly("abs_deviation", &AssetVolatility::abs_deviation)
      .def_readonly("clamped", &AssetVolatility::clamped);

  py::class_<BetaSeries>(m, "BetaSeries")
      .def_readonly("series", &BetaSeries::values)
      .def_readonly("undefined_mask", &BetaSeries::undefined_mask)
      .def_readonly("epsilon", &BetaSeries::epsilon)
      .def_readonly("market_curve", &BetaSeries::market_curve)
      .def_readonly("asset_curve", &BetaSeries::asset_curve);

  py::class_<ForecastError>(m, "ForecastError")
      .def_readonly("rmse", &ForecastError::rmse)
      .def_readonly("mae", &ForecastError::mae)
      .def_readonly("bias", &ForecastError::bias)
      .def_readonly("count", &ForecastError::count);

  m.def("fit_window", [](std::vector<double> v, int degree) { return fit_window(v, degree); },
        py::arg("values"), py::arg("degree"));
  m.def("estimate_trend", &estimate_trend, py::arg("series"), py::arg("config") = TrendConfig{});
  m.def("estimate_derivative", &estimate_derivative, py::arg("series"), py::arg("config") = TrendConfig{});
  m.def("decompose", &decompose, py::arg("series"), py::arg("config") = TrendConfig{});

  m.def("covariance", &covariance, py::arg("x"), py::arg("y"), py::arg("config") = MomentConfig{});
  m.def("variance", [](const Series& x, const MomentConfig& c) { return variance(x, c).value; },
        py::arg("x"), py::arg("config") = MomentConfig{});
  m.def("volatility", [](const Series& x, const MomentConfig& c) { return volatility(x, c).value; },
        py::arg("x"), py::arg("config") = MomentConfig{});
  m.def("abs_deviation_volatility", &abs_deviation_volatility, py::arg("x"),
        py::arg("config") = MomentConfig{});

  m.def("log_return", &log_return, py::arg("prices"), py::arg("delta_t"));
  m.def("arithmetic_return", &arithmetic_return, py::arg("prices"), py::arg("delta_t"));
  m.def("normalized_return", &normalized_return, py::arg("prices"), py::arg("delta_t"));
  m.def("mean_return", &mean_return, py::arg("prices"), py::arg("delta_t"),
        py::arg("config") = TrendConfig{});
  m.def("instantaneous_mean_return", &instantaneous_mean_return, py::arg("prices"),
        py::arg("config") = TrendConfig{});
  m.def("clamp_return", &clamp_return, py::arg("returns"), py::arg("k") = 6.0, py::arg("window") = 250);
  m.def("asset_volatility", &asset_volatility, py::arg("prices"), py::arg("delta_t"),
        py::arg("config") = MomentConfig{}, py::arg("clip") = ClipOptions{});

  auto beta_cfg = [](const TrendConfig& t, double eps) {
    BetaConfig c;
    c.trend = t;
    c.epsilon = eps;
    return c;
  };
  m.def("beta",
        [beta_cfg](const Series& a, const Series& mk, int dt, const TrendConfig& t, double eps) {
          return beta(a, mk, dt, beta_cfg(t, eps));
        },
        py::arg("asset"), py::arg("market"), py::arg("delta_t"), py::arg("config") = TrendConfig{},
        py::arg("epsilon") = kDefaultBetaEpsilon);
  m.def("treynor",
        [beta_cfg](const Series& a, const Series& mk, int dt, const TrendConfig& t, double eps, double rf) {
          return treynor(a, mk, dt, beta_cfg(t, eps), rf);
        },
        py::arg("asset"), py::arg("market"), py::arg("delta_t"), py::arg("config") = TrendConfig{},
        py::arg("epsilon") = kDefaultBetaEpsilon, py::arg("risk_free") = 0.0);
  m.def("instantaneous_treynor",
        [beta_cfg](const Series& a, const Series& mk, const TrendConfig& t, double eps, double rf) {
          return instantaneous_treynor(a, mk, beta_cfg(t, eps), rf);
        },
        py::arg("asset"), py::arg("market"), py::arg("config") = TrendConfig{},
        py::arg("epsilon") = kDefaultBetaEpsilon, py::arg("risk_free") = 0.0);
  m.def("sharpe",
        [](const Series& a, int dt, const MomentConfig& mc, const ClipOptions& clip, double eps,
           double rf) { return sharpe(a, dt, SharpeConfig{mc, clip, eps, rf}); },
        py::arg("asset"), py::arg("delta_t"), py::arg("config") = MomentConfig{},
        py::arg("clip") = ClipOptions{}, py::arg("epsilon_vol") = kDefaultVolatilityEpsilon,
        py::arg("risk_free") = 0.0);

  m.def("forecast_series", &forecast_series, py::arg("series"), py::arg("config") = ForecastConfig{});
  m.def("forecast_volatility", &forecast_volatility, py::arg("prices"), py::arg("delta_t"),
        py::arg("moments") = MomentConfig{}, py::arg("config") = ForecastConfig{},
        py::arg("clip") = ClipOptions{});
  m.def("evaluate_forecast", &evaluate_forecast, py::arg("predicted"), py::arg("realized"));

  m.def("load_csv", [](const std::string& path) { return load_csv(path); }, py::arg("path"));
}
