"""Statistical procedures behind the analysis executors."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import stats as scipy_stats

from ..config import AnalysisConfig
from ..errors import ConstantColumn, TooFewRows


@dataclass
class WelchResult:
    t_statistic: float
    p_value: float
    df: float


def welch_t(a: np.ndarray, b: np.ndarray) -> WelchResult:
    """Welch's unequal-variance t test, two-sided p."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    na, nb = a.size, b.size
    if na < 2 or nb < 2:
        raise TooFewRows("each group needs at least 2 values")
    va, vb = np.var(a, ddof=1), np.var(b, ddof=1)
    se2 = va / na + vb / nb
    if se2 == 0.0:
        return WelchResult(0.0, 1.0, float(na + nb - 2))
    t = float((np.mean(a) - np.mean(b)) / math.sqrt(se2))
    df = se2 ** 2 / ((va / na) ** 2 / (na - 1) + (vb / nb) ** 2 / (nb - 1))
    p = float(2.0 * scipy_stats.t.sf(abs(t), df))
    return WelchResult(t, min(1.0, p), float(df))


@dataclass
class NormalityResult:
    statistic: float
    p_value: float
    skewness: float
    kurtosis: float
    verdict: str  # "consistent with normal" | "not consistent with normal"


def jarque_bera(values: np.ndarray, alpha: float = 0.05, min_rows: int = 20) -> NormalityResult:
    """Jarque-Bera normality test.

    JB = n/6 * (S^2 + (K-3)^2 / 4) with population-moment skewness S and
    kurtosis K; the chi-square(2) survival function is exp(-JB/2) exactly.
    """
    values = np.asarray(values, dtype=float)
    values = values[~np.isnan(values)]
    n = values.size
    if n < min_rows:
        raise TooFewRows(f"normality test needs at least {min_rows} values, got {n}")
    centered = values - values.mean()
    m2 = float(np.mean(centered**2))
    if m2 == 0.0:
        raise ConstantColumn("all values identical")
    skew = float(np.mean(centered**3) / m2**1.5)
    kurt = float(np.mean(centered**4) / m2**2)
    jb = n / 6.0 * (skew**2 + (kurt - 3.0) ** 2 / 4.0)
    p = math.exp(-jb / 2.0)
    verdict = "consistent with normal" if p >= alpha else "not consistent with normal"
    return NormalityResult(jb, p, skew, kurt, verdict)


@dataclass
class OutlierResult:
    indices: list[int]       # positions flagged, in input order
    scores: list[float]      # modified z-score per input value
    degenerate: bool         # MAD was zero


def mad_outliers(
    values: np.ndarray, config: AnalysisConfig | None = None, min_rows: int = 8
) -> OutlierResult:
    """Modified z-score outliers: |0.6745 (x - median) / MAD| > 3.5.

    With MAD = 0 (over half the values identical) the fallback flags every
    value different from the median and sets the degenerate marker.
    """
    config = config or AnalysisConfig()
    values = np.asarray(values, dtype=float)
    if values.size < min_rows:
        raise TooFewRows(f"anomaly detection needs at least {min_rows} values")
    median = float(np.median(values))
    abs_dev = np.abs(values - median)
    mad = float(np.median(abs_dev))
    if mad == 0.0:
        flags = abs_dev > 0.0
        # modified z undefined; report raw absolute deviations as scores
        return OutlierResult(
            [int(i) for i in np.nonzero(flags)[0]], [float(d) for d in abs_dev], True
        )
    m = config.anomaly_mad_scale * (values - median) / mad
    flagged = np.abs(m) > config.anomaly_cutoff
    return OutlierResult(
        [int(i) for i in np.nonzero(flagged)[0]], [float(x) for x in m], False
    )


@dataclass
class LinearFit:
    slope: float
    intercept: float
    r: float
    r_squared: float


def linear_fit(x: np.ndarray, y: np.ndarray) -> LinearFit:
    """Least-squares line plus Pearson r; raises on constant x."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    xd = x - x.mean()
    yd = y - y.mean()
    sxx = float(np.sum(xd * xd))
    syy = float(np.sum(yd * yd))
    if sxx == 0.0:
        raise ConstantColumn("x column is constant")
    sxy = float(np.sum(xd * yd))
    slope = sxy / sxx
    intercept = float(y.mean() - slope * x.mean())
    if syy == 0.0:
        # flat y: perfect fit with zero slope variance explained
        return LinearFit(slope, intercept, 0.0, 1.0)
    r = sxy / math.sqrt(sxx * syy)
    r = max(-1.0, min(1.0, r))
    return LinearFit(slope, intercept, r, r * r)


def freedman_diaconis_bins(
    values: np.ndarray, config: AnalysisConfig | None = None
) -> np.ndarray:
    """Histogram bin edges with Freedman-Diaconis width, clamped to [5, 50] bins."""
    config = config or AnalysisConfig()
    values = np.asarray(values, dtype=float)
    lo, hi = float(np.min(values)), float(np.max(values))
    if lo == hi:
        return np.linspace(lo - 0.5, hi + 0.5, config.histogram_min_bins + 1)
    q1, q3 = np.quantile(values, [0.25, 0.75])
    iqr = float(q3 - q1)
    if iqr > 0.0:
        width = 2.0 * iqr / values.size ** (1.0 / 3.0)
        bins = max(1, int(math.ceil((hi - lo) / width)))
    else:
        bins = config.histogram_min_bins
    bins = min(config.histogram_max_bins, max(config.histogram_min_bins, bins))
    return np.linspace(lo, hi, bins + 1)
