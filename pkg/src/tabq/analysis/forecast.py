"""Holt's linear exponential smoothing."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..config import AnalysisConfig
from ..errors import NonMonotoneTime, TooFewRows

_GRID = [round(0.1 * i, 1) for i in range(1, 10)]


@dataclass
class HoltFit:
    alpha: float
    beta: float
    level: float
    trend: float
    sse: float
    residual_std: float


@dataclass
class ForecastResult:
    times: list[float]
    predictions: list[float]
    lower: list[float]
    upper: list[float]
    fit: HoltFit


def _run_holt(values: np.ndarray, alpha: float, beta: float) -> HoltFit:
    level = float(values[0])
    trend = float(values[1] - values[0])
    sse = 0.0
    residuals = []
    for y in values[1:]:
        forecast = level + trend
        error = float(y) - forecast
        residuals.append(error)
        sse += error * error
        new_level = alpha * float(y) + (1.0 - alpha) * (level + trend)
        trend = beta * (new_level - level) + (1.0 - beta) * trend
        level = new_level
    n = len(residuals)
    residual_std = math.sqrt(sse / n) if n else 0.0
    return HoltFit(alpha, beta, level, trend, sse, residual_std)


def holt_forecast(
    times: np.ndarray,
    values: np.ndarray,
    horizon: int,
    config: AnalysisConfig | None = None,
) -> ForecastResult:
    """Forecast `horizon` steps ahead with level + trend smoothing.

    Defaults alpha=0.5, beta=0.3; with 24+ points both are grid-tuned over
    {0.1..0.9} by in-sample one-step SSE (first minimum in scan order wins).
    Future time stamps continue the series at its mean spacing.
    """
    config = config or AnalysisConfig()
    times = np.asarray(times, dtype=float)
    values = np.asarray(values, dtype=float)
    if values.size < 8:
        raise TooFewRows("forecasting needs at least 8 points")
    if np.any(np.diff(times) <= 0):
        raise NonMonotoneTime("time stamps must be strictly increasing")
    if horizon < 1:
        raise ValueError("horizon must be positive")

    if values.size >= config.holt_grid_min_points:
        best: HoltFit | None = None
        for alpha in _GRID:
            for beta in _GRID:
                fit = _run_holt(values, alpha, beta)
                if best is None or fit.sse < best.sse:
                    best = fit
        fit = best
    else:
        fit = _run_holt(values, config.holt_alpha, config.holt_beta)

    spacing = float(np.mean(np.diff(times)))
    future_times = [float(times[-1] + spacing * h) for h in range(1, horizon + 1)]
    predictions = [fit.level + h * fit.trend for h in range(1, horizon + 1)]
    margin = 1.96 * fit.residual_std
    return ForecastResult(
        times=future_times,
        predictions=predictions,
        lower=[p - margin for p in predictions],
        upper=[p + margin for p in predictions],
        fit=fit,
    )
