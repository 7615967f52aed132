"""Plan execution: one executor per intention."""

from .chart import ChartKind, ChartSpec, Encoding
from .executors import PlanContext, execute
from .forecast import ForecastResult, holt_forecast
from .result import AnalysisResult, Table
from .rootcause import RootCauseResult, Split, SplitKind, root_cause
from .stats import (
    freedman_diaconis_bins,
    jarque_bera,
    linear_fit,
    mad_outliers,
    welch_t,
)

__all__ = [
    "AnalysisResult",
    "ChartKind",
    "ChartSpec",
    "Encoding",
    "ForecastResult",
    "PlanContext",
    "RootCauseResult",
    "Split",
    "SplitKind",
    "Table",
    "execute",
    "freedman_diaconis_bins",
    "holt_forecast",
    "jarque_bera",
    "linear_fit",
    "mad_outliers",
    "root_cause",
    "welch_t",
]
