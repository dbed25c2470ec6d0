import math
import os
import pathlib

import pytest

import trendvol as tv

DATA = pathlib.Path(os.environ.get("TRENDVOL_DATA_DIR", pathlib.Path(__file__).resolve().parents[2] / "data"))


def exponential(rate, n, start=50.0):
    return tv.Series([start * math.exp(rate * i) for i in range(n)])


def test_series_masks_and_dates():
    s = tv.Series([1.0, 2.0, 3.0], dates=["2020-01-02", "2020-01-03", "2020-01-06"], defined=[True, False, True])
    assert len(s) == 3
    assert s.values == [1.0, None, 3.0]
    assert s.dates[2] == "2020-01-06"


def test_trend_reproduces_a_line():
    line = tv.Series([2.0 + 3.0 * i for i in range(50)])
    parts = tv.decompose(line, tv.TrendConfig(window=10, degree=1))
    for f in parts.fluctuation.values:
        assert f is None or abs(f) < 1e-9
    for d in parts.derivative.values:
        assert d is None or abs(d - 3.0) < 1e-9


def test_exponential_returns_and_volatility():
    x = exponential(0.01, 200)
    for v in tv.normalized_return(x, 5).series.values[5:]:
        assert v == pytest.approx(0.01, abs=1e-12)
    vol = tv.asset_volatility(x, 5, tv.MomentConfig(tv.TrendConfig(60, 2)))
    assert all(v is None or v < 1e-10 for v in vol.volatility.values)
    assert all(v is None for v in tv.sharpe(x, 5).values)


def test_beta_of_a_series_against_itself():
    x = tv.load_csv(str(DATA / "market.csv"))
    b = tv.beta(x, x, 20)
    defined = [v for v in b.series.values if v is not None]
    assert defined and all(v == 1.0 for v in defined)


def test_forecast_of_a_line_and_error_report():
    line = tv.Series([2.0 + 3.0 * i for i in range(60)])
    f = tv.forecast_series(line, tv.ForecastConfig(horizon=5, order=tv.ForecastOrder.taylor1))
    assert len(f) == 65
    err = tv.evaluate_forecast(f, line)
    assert err.count == 60 - 5 - 2
    assert err.mae < 1e-9


def test_errors_map_to_python_exceptions():
    with pytest.raises(tv.TrendvolError, match="NonPositivePrice"):
        tv.log_return(tv.Series([1.0, -1.0, 2.0]), 1)
    with pytest.raises(ValueError):
        tv.TrendConfig(window=2, degree=2)
    with pytest.raises(tv.TrendvolError):
        tv.load_csv(str(DATA / "missing.csv"))
