"""Regression metrics."""

from __future__ import annotations

import math
from enum import Enum

import numpy as np

from ..errors import LengthMismatch


class Metric(str, Enum):
    MAE = "MAE"
    MSE = "MSE"
    RMSE = "RMSE"


def score(predictions, truth, metric: Metric | str) -> float:
    """MAE / MSE / RMSE of predictions against truth."""
    metric = Metric(metric)
    p = np.asarray(predictions, dtype=float)
    t = np.asarray(truth, dtype=float)
    if p.shape != t.shape or p.size == 0:
        raise LengthMismatch(f"prediction/truth shapes differ: {p.shape} vs {t.shape}")
    if metric == Metric.MAE:
        return float(np.mean(np.abs(p - t)))
    mse = float(np.mean((p - t) ** 2))
    if metric == Metric.MSE:
        return mse
    return math.sqrt(mse)
