from __future__ import annotations

import numpy as np
import pytest

from tabq.analysis.forecast import holt_forecast
from tabq.errors import NonMonotoneTime, TooFewRows


def test_exact_linear_trend_is_fixed_point():
    t = np.arange(20, dtype=float)
    y = 2.0 * t
    result = holt_forecast(t, y, horizon=3)
    expected = [2.0 * (19 + h) for h in (1, 2, 3)]
    assert result.predictions == pytest.approx(expected, abs=1e-6)


def test_constant_series_stays_constant():
    t = np.arange(15, dtype=float)
    y = np.full(15, 5.0)
    result = holt_forecast(t, y, horizon=4)
    assert result.predictions == pytest.approx([5.0] * 4, abs=1e-9)
    assert result.fit.residual_std == pytest.approx(0.0, abs=1e-12)


def test_noisy_trend_tracks_generating_line():
    rng = np.random.default_rng(8)
    t = np.arange(100, dtype=float)
    y = 3.0 * t + rng.normal(0, 1, 100)
    result = holt_forecast(t, y, horizon=10)
    truth = [3.0 * (99 + h) for h in range(1, 11)]
    mae = float(np.mean(np.abs(np.array(result.predictions) - np.array(truth))))
    assert mae < 2.0


def test_grid_tuning_beats_or_matches_defaults_in_sample():
    rng = np.random.default_rng(9)
    t = np.arange(60, dtype=float)
    y = 0.5 * t + rng.normal(0, 2, 60)
    tuned = holt_forecast(t, y, horizon=1)          # 60 >= 24 -> tuned
    short = holt_forecast(t[:20], y[:20], horizon=1)  # defaults
    assert tuned.fit.sse <= _sse_with(y, 0.5, 0.3) + 1e-9
    assert (short.fit.alpha, short.fit.beta) == (0.5, 0.3)


def _sse_with(y, alpha, beta):
    level, trend = float(y[0]), float(y[1] - y[0])
    sse = 0.0
    for value in y[1:]:
        forecast = level + trend
        sse += (float(value) - forecast) ** 2
        new_level = alpha * float(value) + (1 - alpha) * (level + trend)
        trend = beta * (new_level - level) + (1 - beta) * trend
        level = new_level
    return sse


def test_future_timestamps_evenly_spaced():
    t = np.array([0.0, 2.0, 4.0, 6.0, 8.0, 10.0, 12.0, 14.0])
    y = np.arange(8, dtype=float)
    result = holt_forecast(t, y, horizon=3)
    assert result.times == pytest.approx([16.0, 18.0, 20.0])


def test_interval_width_from_residual_std():
    rng = np.random.default_rng(10)
    t = np.arange(30, dtype=float)
    y = t + rng.normal(0, 1, 30)
    result = holt_forecast(t, y, horizon=2)
    width = result.upper[0] - result.predictions[0]
    assert width == pytest.approx(1.96 * result.fit.residual_std, abs=1e-9)


def test_too_few_points():
    with pytest.raises(TooFewRows):
        holt_forecast(np.arange(7.0), np.arange(7.0), horizon=1)


def test_non_monotone_time():
    t = np.array([0.0, 1.0, 1.0, 2.0, 3.0, 4.0, 5.0, 6.0])
    with pytest.raises(NonMonotoneTime):
        holt_forecast(t, np.arange(8.0), horizon=1)
