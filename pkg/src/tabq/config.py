"""Tunable engine constants.

The thresholds here are fixed defaults, not learned values; anything a
deployment might reasonably want to change lives on one of these dataclasses
so tests and the service config file can override it in one place.
"""

from __future__ import annotations

from dataclasses import dataclass, field


# Default cell values treated as missing (case-insensitive).
DEFAULT_NULL_TOKENS = ("", "na", "n/a", "null", "nan")

# Accepted date formats, tried in order. Ambiguous day/month forms resolve
# month-first; that is the whole point of pinning a bounded list.
DATE_FORMATS = (
    "%Y-%m-%d",
    "%Y-%m-%dT%H:%M:%S",
    "%Y-%m-%d %H:%M:%S",
    "%Y-%m-%dT%H:%M",
    "%Y-%m-%d %H:%M",
    "%Y/%m/%d",
    "%m/%d/%Y",
)

BOOLEAN_TOKENS = frozenset({"true", "false", "yes", "no", "0", "1"})


@dataclass(frozen=True)
class TypeDetectionConfig:
    """Thresholds for column type detection."""

    numeric_ratio: float = 0.95
    datetime_ratio: float = 0.95
    categorical_distinct_ratio: float = 0.5
    categorical_distinct_cap: int = 100


@dataclass(frozen=True)
class MatcherConfig:
    """Constants for the question matcher."""

    fuzzy_threshold: float = 0.8
    binding_window: int = 4          # tokens between a restriction and its column
    operand_window: int = 2          # tokens scanned for a restriction operand
    max_candidates: int = 3
    # Confidence component when a candidate has no column mentions at all.
    no_mention_score: float = 0.3
    # Intention score assigned when the arity fallback fires (no keyword).
    fallback_intention_score: float = 0.5
    aliases: dict[str, str] = field(default_factory=dict)


@dataclass(frozen=True)
class AnalysisConfig:
    anomaly_mad_scale: float = 0.6745
    anomaly_cutoff: float = 3.5
    normality_alpha: float = 0.05
    histogram_min_bins: int = 5
    histogram_max_bins: int = 50
    comparison_max_levels: int = 20
    forecast_default_horizon: int = 10
    holt_alpha: float = 0.5
    holt_beta: float = 0.3
    holt_grid_min_points: int = 24


@dataclass(frozen=True)
class AutomlConfig:
    min_rows: int = 20
    stream_window: int = 50_000
    reselect_fraction: float = 0.25
    simulate_budget: int = 1000
    range_slack: float = 0.10        # extrapolation tolerance as span fraction


DEFAULT_ROLES = ("operations", "quality", "sales", "finance", "general")


@dataclass(frozen=True)
class EngineConfig:
    """Top-level configuration shared by the CLI and the service."""

    seed: int = 7
    detection: TypeDetectionConfig = field(default_factory=TypeDetectionConfig)
    matcher: MatcherConfig = field(default_factory=MatcherConfig)
    analysis: AnalysisConfig = field(default_factory=AnalysisConfig)
    automl: AutomlConfig = field(default_factory=AutomlConfig)
    roles: tuple[str, ...] = DEFAULT_ROLES
    model_client_timeout: float = 30.0
