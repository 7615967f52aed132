"""Per-intention executors and the plan dispatcher."""

from __future__ import annotations

import numpy as np

from ..config import AnalysisConfig
from ..dataset import Column, Dataset
from ..errors import (
    ColumnTypeMismatch,
    EmptyAfterFilter,
    NonNumericValue,
    TooFewRows,
    TooManyLevels,
    UnknownIntention,
)
from ..matching.plans import (
    AGGREGATE_KINDS,
    ARITHMETIC_KINDS,
    FILTER_KINDS,
    Intention,
    QueryPlan,
    Restriction,
    RestrictionKind,
)
from ..profiling import (
    ColumnType,
    TableProfile,
    datetime_values,
    numeric_values,
    pearson,
    profile_column,
)
from .chart import ChartKind, ChartSpec, Encoding
from .forecast import holt_forecast
from .result import AnalysisResult, Table
from .rootcause import Split, SplitKind, root_cause
from .stats import (
    freedman_diaconis_bins,
    jarque_bera,
    linear_fit,
    mad_outliers,
    welch_t,
)

_ARITH_SYMBOL = {
    RestrictionKind.PLUS: "+",
    RestrictionKind.MINUS: "-",
    RestrictionKind.MULTIPLY: "*",
    RestrictionKind.DIVIDE: "/",
}


class PlanContext:
    """Dataset view after applying a plan's filter/arithmetic restrictions."""

    def __init__(self, plan: QueryPlan, dataset: Dataset, profiles: TableProfile,
                 config: AnalysisConfig | None = None):
        self.plan = plan
        self.config = config or AnalysisConfig()
        self.profiles = profiles
        self.derived_types: dict[str, ColumnType] = {}
        self.dataset = self._apply_restrictions(dataset)

    # -- column typing ------------------------------------------------------

    def ctype(self, name: str) -> ColumnType:
        if name in self.derived_types:
            return self.derived_types[name]
        return self.profiles.profile(name).ctype

    def mentioned(self, *ctypes: ColumnType, exclude: set[str] | None = None) -> str | None:
        exclude = exclude or set()
        for mention in self.plan.mentions:
            name = self._resolve(mention.column)
            if name in exclude:
                continue
            if self.ctype(name) in ctypes:
                return name
        return None

    def value_column(self, exclude: set[str] | None = None) -> str:
        name = self.mentioned(ColumnType.NUMERIC, exclude=exclude)
        if name is None:
            raise ColumnTypeMismatch("plan needs a numeric column")
        return name

    def label_column(self) -> str | None:
        name = self.mentioned(ColumnType.CATEGORICAL, ColumnType.BOOLEAN)
        if name is None:
            # high-cardinality label columns detect as Text but still group
            name = self.mentioned(ColumnType.TEXT)
        return name

    def time_column(self) -> str | None:
        name = self.mentioned(ColumnType.DATETIME)
        if name is not None:
            return name
        for p in self.profiles.column_profiles:
            if p.ctype == ColumnType.DATETIME:
                return p.name
        return None

    def numeric(self, name: str) -> np.ndarray:
        return numeric_values(self.dataset.column(name))

    def _resolve(self, name: str) -> str:
        """Mentions of a column consumed by arithmetic map to its derived column."""
        return self._derived_from.get(name, name)

    # -- restriction application ---------------------------------------------

    def _apply_restrictions(self, dataset: Dataset) -> Dataset:
        self._derived_from: dict[str, str] = {}
        plan = self.plan

        for r in plan.restrictions:
            if r.kind not in ARITHMETIC_KINDS:
                continue
            source = r.target_column or self._first_numeric_mention(dataset)
            if source is None:
                raise ColumnTypeMismatch(f"{r.kind.value} needs a numeric column")
            base = numeric_values(dataset.column(self._derived_from.get(source, source)))
            operand = float(r.operand)
            symbol = _ARITH_SYMBOL[r.kind]
            if r.kind == RestrictionKind.PLUS:
                derived = base + operand
            elif r.kind == RestrictionKind.MINUS:
                derived = base - operand
            elif r.kind == RestrictionKind.MULTIPLY:
                derived = base * operand
            else:
                derived = base / operand if operand != 0 else np.full_like(base, np.nan)
            name = f"expr({source}{symbol}{operand:g})"
            cells = [None if np.isnan(v) else repr(float(v)) for v in derived]
            dataset = dataset.with_column(Column(name, cells))
            self.derived_types[name] = ColumnType.NUMERIC
            self._derived_from[source] = name

        keep = np.ones(dataset.row_count, dtype=bool)
        applied_filter = False
        for r in plan.restrictions:
            if r.kind not in FILTER_KINDS:
                continue
            source = r.target_column or self._first_numeric_mention(dataset)
            if source is None:
                raise ColumnTypeMismatch(f"{r.kind.value} needs a numeric column")
            source = self._derived_from.get(source, source)
            if self.ctype(source) != ColumnType.NUMERIC:
                raise ColumnTypeMismatch(f"filter column {source!r} is not numeric")
            values = numeric_values(dataset.column(source))
            operand = float(r.operand)
            with np.errstate(invalid="ignore"):
                if r.kind == RestrictionKind.GREATER_THAN:
                    mask = values > operand
                elif r.kind == RestrictionKind.LESS_THAN:
                    mask = values < operand
                else:
                    mask = values == operand
            keep &= np.where(np.isnan(values), False, mask)
            applied_filter = True

        if applied_filter:
            indices = [int(i) for i in np.nonzero(keep)[0]]
            if not indices:
                raise EmptyAfterFilter("no rows remain after filter restrictions")
            dataset = dataset.subset(indices)
        return dataset

    def _first_numeric_mention(self, dataset: Dataset) -> str | None:
        for mention in self.plan.mentions:
            name = mention.column
            if dataset.has_column(name) and self.ctype(name) == ColumnType.NUMERIC:
                return name
        return None

    def aggregate_restrictions(self) -> list[Restriction]:
        return [r for r in self.plan.restrictions if r.kind in AGGREGATE_KINDS]

    def rank_limit(self) -> tuple[RestrictionKind, int] | None:
        for r in self.plan.restrictions:
            if r.kind in (RestrictionKind.TOP, RestrictionKind.LAST):
                return r.kind, int(r.operand)
        return None


def _drop_nan(values: np.ndarray) -> np.ndarray:
    return values[~np.isnan(values)]


_AGG_FUNCS = {
    RestrictionKind.AVERAGE: ("average", np.mean),
    RestrictionKind.MEDIAN: ("median", np.median),
    RestrictionKind.SUM: ("sum", np.sum),
    RestrictionKind.MAXIMUM: ("maximum", np.max),
    RestrictionKind.MINIMUM: ("minimum", np.min),
}


# --- executors ----------------------------------------------------------------


def run_distribution(ctx: PlanContext) -> AnalysisResult:
    column = ctx.value_column()
    values = _drop_nan(ctx.numeric(column))
    if values.size == 0:
        raise ColumnTypeMismatch(f"column {column!r} has no numeric values")
    edges = freedman_diaconis_bins(values, ctx.config)
    counts, edges = np.histogram(values, bins=edges)
    table = Table(
        columns=["bin_start", "bin_end", "count"],
        rows=[
            [float(edges[i]), float(edges[i + 1]), int(counts[i])]
            for i in range(len(counts))
        ],
    )
    stats_table = Table(
        columns=["statistic", "value"],
        rows=[
            ["mean", float(np.mean(values))],
            ["median", float(np.median(values))],
            ["std", float(np.std(values, ddof=1)) if values.size > 1 else 0.0],
            ["n", int(values.size)],
            ["bin_count", int(len(counts))],
        ],
    )
    findings = [
        ("column", column),
        ("mean", float(np.mean(values))),
        ("median", float(np.median(values))),
        ("bin_count", int(len(counts))),
        ("n", int(values.size)),
    ]
    chart = ChartSpec(ChartKind.HISTOGRAM, Encoding(column), title=f"Distribution of {column}")
    return AnalysisResult(ctx.plan, chart, {"histogram": table, "stats": stats_table}, findings)


def run_proportion(ctx: PlanContext) -> AnalysisResult:
    column = ctx.label_column()
    if column is None:
        raise ColumnTypeMismatch("proportion needs a categorical column")
    cells = [c for c in ctx.dataset.column(column).cells if c is not None]
    if not cells:
        raise ColumnTypeMismatch(f"column {column!r} has no values")
    counts: dict[str, int] = {}
    for cell in cells:
        counts[cell] = counts.get(cell, 0) + 1
    total = len(cells)
    ordered = sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))
    table = Table(
        columns=["level", "count", "share"],
        rows=[[level, count, count / total] for level, count in ordered],
    )
    findings = [
        ("column", column),
        ("levels", len(ordered)),
        ("top_level", ordered[0][0]),
        ("top_share", ordered[0][1] / total),
    ]
    chart = ChartSpec(ChartKind.PIE, Encoding(column), title=f"Share of {column}")
    return AnalysisResult(ctx.plan, chart, {"shares": table}, findings)


def run_aggregation(ctx: PlanContext) -> AnalysisResult:
    column = ctx.value_column()
    values = _drop_nan(ctx.numeric(column))
    if values.size == 0:
        raise ColumnTypeMismatch(f"column {column!r} has no numeric values")
    aggs = ctx.aggregate_restrictions()
    kinds = [r.kind for r in aggs] or [RestrictionKind.AVERAGE]
    label = ctx.label_column()

    findings: list[tuple[str, object]] = [("column", column)]
    if label is None:
        rows = []
        for kind in kinds:
            name, fn = _AGG_FUNCS[kind]
            value = float(fn(values))
            rows.append([name, value])
            findings.append((name, value))
        table = Table(columns=["aggregate", "value"], rows=rows)
        chart = ChartSpec(
            ChartKind.BAR, Encoding(column, kinds[0].value.lower()),
            title=f"{kinds[0].value} of {column}",
        )
        return AnalysisResult(ctx.plan, chart, {"aggregates": table}, findings)

    groups = _group_values(ctx, label, column)
    agg_names = [_AGG_FUNCS[k][0] for k in kinds]
    rows = []
    for level in sorted(groups):
        row: list = [level]
        for kind in kinds:
            _, fn = _AGG_FUNCS[kind]
            row.append(float(fn(groups[level])) if groups[level].size else None)
        rows.append(row)
    table = Table(columns=[label] + agg_names, rows=rows)
    findings += [("group_column", label), ("groups", len(rows))]
    chart = ChartSpec(
        ChartKind.BAR, Encoding(label), Encoding(column, agg_names[0]),
        title=f"{agg_names[0].title()} of {column} by {label}",
    )
    return AnalysisResult(ctx.plan, chart, {"aggregates": table}, findings)


def _group_values(ctx: PlanContext, label: str, value: str) -> dict[str, np.ndarray]:
    cells = ctx.dataset.column(label).cells
    values = ctx.numeric(value)
    groups: dict[str, list[float]] = {}
    for cell, v in zip(cells, values):
        if cell is None or np.isnan(v):
            continue
        groups.setdefault(cell, []).append(float(v))
    return {k: np.asarray(v) for k, v in groups.items()}


def run_ranking(ctx: PlanContext) -> AnalysisResult:
    value_col = ctx.value_column()
    label = ctx.label_column()
    limit = ctx.rank_limit()
    kind, n = limit if limit else (RestrictionKind.TOP, 10)
    take_top = kind == RestrictionKind.TOP

    if label is not None:
        groups = _group_values(ctx, label, value_col)
        aggs = ctx.aggregate_restrictions()
        agg_kind = aggs[0].kind if aggs else RestrictionKind.SUM
        agg_name, fn = _AGG_FUNCS[agg_kind]
        pairs = [(level, float(fn(vals))) for level, vals in groups.items() if vals.size]
        pairs.sort(key=lambda kv: (-kv[1], kv[0]) if take_top else (kv[1], kv[0]))
        pairs = pairs[:n]
        table = Table(columns=[label, f"{agg_name}({value_col})"],
                      rows=[[lv, v] for lv, v in pairs])
        findings = [
            ("value_column", value_col), ("label_column", label),
            ("direction", "top" if take_top else "last"), ("limit", n),
            ("rows", len(pairs)),
        ]
        if pairs:
            findings += [("lead_label", pairs[0][0]), ("lead_value", pairs[0][1])]
        chart = ChartSpec(
            ChartKind.BAR, Encoding(label), Encoding(value_col, agg_name),
            title=f"{'Top' if take_top else 'Last'} {n} {label} by {agg_name} of {value_col}",
        )
        return AnalysisResult(ctx.plan, chart, {"ranking": table}, findings)

    values = _drop_nan(ctx.numeric(value_col))
    if values.size == 0:
        raise ColumnTypeMismatch(f"column {value_col!r} has no numeric values")
    ordered = np.sort(values)
    ordered = ordered[::-1] if take_top else ordered
    picked = [float(v) for v in ordered[: min(n, ordered.size)]]
    table = Table(columns=[value_col], rows=[[v] for v in picked])
    findings = [
        ("value_column", value_col),
        ("direction", "top" if take_top else "last"),
        ("limit", n),
        ("rows", len(picked)),
        ("lead_value", picked[0]),
    ]
    chart = ChartSpec(ChartKind.BAR, Encoding(value_col),
                      title=f"{'Top' if take_top else 'Last'} {n} {value_col}")
    return AnalysisResult(ctx.plan, chart, {"ranking": table}, findings)


def run_comparison(ctx: PlanContext) -> AnalysisResult:
    group_col = ctx.label_column()
    if group_col is None:
        raise ColumnTypeMismatch("comparison needs a categorical group column")
    value_col = ctx.mentioned(ColumnType.NUMERIC)
    if value_col is None:
        raise NonNumericValue("comparison needs a numeric value column")
    groups = _group_values(ctx, group_col, value_col)
    if len(groups) < 2:
        raise ColumnTypeMismatch("comparison needs at least 2 group levels")
    if len(groups) > ctx.config.comparison_max_levels:
        raise TooManyLevels(
            f"group column has {len(groups)} levels, cap is {ctx.config.comparison_max_levels}"
        )
    rows = []
    for level in sorted(groups):
        vals = groups[level]
        rows.append([
            level, int(vals.size), float(np.mean(vals)),
            float(np.std(vals, ddof=1)) if vals.size > 1 else 0.0,
        ])
    tables = {"groups": Table(columns=[group_col, "count", "mean", "std"], rows=rows)}
    findings: list[tuple[str, object]] = [
        ("group_column", group_col), ("value_column", value_col), ("groups", len(groups)),
    ]
    if len(groups) == 2:
        (la, a), (lb, b) = sorted(groups.items())
        result = welch_t(a, b)
        tables["test"] = Table(
            columns=["statistic", "value"],
            rows=[["welch_t", result.t_statistic], ["p_value", result.p_value],
                  ["df", result.df]],
        )
        findings += [
            ("welch_t", result.t_statistic), ("p_value", result.p_value),
            ("group_a", la), ("group_b", lb),
        ]
    chart = ChartSpec(ChartKind.BOX, Encoding(group_col), Encoding(value_col),
                      title=f"{value_col} by {group_col}")
    return AnalysisResult(ctx.plan, chart, tables, findings)


def run_root_cause(ctx: PlanContext) -> AnalysisResult:
    target = ctx.mentioned(ColumnType.NUMERIC, ColumnType.CATEGORICAL, ColumnType.BOOLEAN)
    if target is None:
        raise ColumnTypeMismatch("root cause needs a target column")
    threshold = None
    for r in ctx.plan.restrictions:
        if r.kind == RestrictionKind.GREATER_THAN and (r.target_column in (None, target)):
            threshold = float(r.operand)
    split = (
        Split(SplitKind.THRESHOLD, threshold=threshold)
        if threshold is not None
        else Split(SplitKind.MEDIAN)
    )
    # Factor scoring runs against the filtered dataset with fresh profiles
    # so derived/filtered columns score consistently.
    result = root_cause(ctx.dataset, target, _context_profiles(ctx), split)
    table = Table(
        columns=["factor", "method", "score", "high_n", "low_n"],
        rows=[[f.column, f.method, f.score, f.high_n, f.low_n] for f in result.factors],
    )
    findings: list[tuple[str, object]] = [
        ("target", target),
        ("split", result.split_description),
        ("high_n", result.high_n),
        ("low_n", result.low_n),
    ]
    if result.split_value is not None:
        findings.append(("split_value", result.split_value))
    if result.factors:
        findings += [
            ("top_factor", result.factors[0].column),
            ("top_factor_score", result.factors[0].score),
        ]
    chart = ChartSpec(ChartKind.BAR, Encoding("factor"), Encoding("score"),
                      title=f"Factors separating high vs low {target}")
    return AnalysisResult(ctx.plan, chart, {"factors": table}, findings)


def run_anomaly(ctx: PlanContext) -> AnalysisResult:
    column = ctx.value_column()
    values = ctx.numeric(column)
    present_idx = [int(i) for i in np.nonzero(~np.isnan(values))[0]]
    present = values[~np.isnan(values)]
    result = mad_outliers(present, ctx.config)
    flagged_rows = [present_idx[i] for i in result.indices]
    table = Table(
        columns=["row", "value", "score"],
        rows=[
            [flagged_rows[j], float(present[result.indices[j]]), result.scores[result.indices[j]]]
            for j in range(len(result.indices))
        ],
    )
    findings = [
        ("column", column),
        ("outlier_count", len(result.indices)),
        ("n", int(present.size)),
        ("degenerate", bool(result.degenerate)),
    ]
    chart = ChartSpec(ChartKind.SCATTER, Encoding("row"), Encoding("value"),
                      title=f"Outliers in {column}")
    return AnalysisResult(ctx.plan, chart, {"outliers": table}, findings)


def run_normality(ctx: PlanContext) -> AnalysisResult:
    column = ctx.value_column()
    values = _drop_nan(ctx.numeric(column))
    result = jarque_bera(values, ctx.config.normality_alpha)
    table = Table(
        columns=["statistic", "value"],
        rows=[["jb_statistic", result.statistic], ["p_value", result.p_value],
              ["skewness", result.skewness], ["kurtosis", result.kurtosis],
              ["n", int(values.size)]],
    )
    findings = [
        ("column", column),
        ("jb_statistic", result.statistic),
        ("p_value", result.p_value),
        ("verdict", result.verdict),
        ("n", int(values.size)),
    ]
    chart = ChartSpec(ChartKind.HISTOGRAM, Encoding(column),
                      title=f"Normality check for {column}")
    return AnalysisResult(ctx.plan, chart, {"test": table}, findings)


def run_forecast(ctx: PlanContext) -> AnalysisResult:
    time_col = ctx.time_column()
    if time_col is None:
        raise ColumnTypeMismatch("forecast needs a datetime column")
    value_col = ctx.value_column()
    times = datetime_values(ctx.dataset.column(time_col))
    values = ctx.numeric(value_col)
    mask = ~(np.isnan(times) | np.isnan(values))
    pairs = sorted(zip(times[mask], values[mask]))
    # collapse duplicate time stamps by keeping the last observation
    dedup: dict[float, float] = {}
    for t, v in pairs:
        dedup[t] = v
    ts = np.asarray(sorted(dedup))
    ys = np.asarray([dedup[t] for t in sorted(dedup)])
    horizon = ctx.config.forecast_default_horizon
    result = holt_forecast(ts, ys, horizon, ctx.config)
    table = Table(
        columns=["time", "prediction", "lower", "upper"],
        rows=[[result.times[i], result.predictions[i], result.lower[i], result.upper[i]]
              for i in range(horizon)],
    )
    fit_table = Table(
        columns=["parameter", "value"],
        rows=[["alpha", result.fit.alpha], ["beta", result.fit.beta],
              ["level", result.fit.level], ["trend_per_step", result.fit.trend],
              ["residual_std", result.fit.residual_std], ["horizon", horizon]],
    )
    findings = [
        ("value_column", value_col),
        ("time_column", time_col),
        ("horizon", horizon),
        ("trend_per_step", result.fit.trend),
        ("last_prediction", result.predictions[-1]),
    ]
    chart = ChartSpec(ChartKind.LINE, Encoding("time"), Encoding("prediction"),
                      title=f"Forecast of {value_col}")
    return AnalysisResult(ctx.plan, chart, {"forecast": table, "fit": fit_table}, findings)


def run_relationship(ctx: PlanContext) -> AnalysisResult:
    col_a = ctx.value_column()
    col_b = ctx.mentioned(ColumnType.NUMERIC, exclude={col_a})
    if col_b is None:
        # fall back to the strongest correlated numeric partner
        col_b = _strongest_partner(ctx, col_a)
    if col_b is None:
        raise ColumnTypeMismatch("relationship needs two numeric columns")
    x = ctx.numeric(col_a)
    y = ctx.numeric(col_b)
    mask = ~(np.isnan(x) | np.isnan(y))
    fit = linear_fit(x[mask], y[mask])
    r = pearson(x, y)
    table = Table(
        columns=["statistic", "value"],
        rows=[["pearson_r", r if r is not None else fit.r], ["slope", fit.slope],
              ["intercept", fit.intercept], ["r_squared", fit.r_squared],
              ["n", int(mask.sum())]],
    )
    findings = [
        ("column_a", col_a), ("column_b", col_b),
        ("pearson_r", r if r is not None else fit.r),
        ("slope", fit.slope), ("intercept", fit.intercept),
        ("r_squared", fit.r_squared),
    ]
    chart = ChartSpec(ChartKind.SCATTER, Encoding(col_a), Encoding(col_b),
                      title=f"{col_b} vs {col_a}")
    return AnalysisResult(ctx.plan, chart, {"fit": table}, findings)


def _strongest_partner(ctx: PlanContext, column: str) -> str | None:
    matrix = ctx.profiles.correlation
    if matrix is None or column not in matrix.columns:
        return None
    best, best_r = None, 0.0
    for other in matrix.columns:
        if other == column:
            continue
        r = matrix.get(column, other)
        if r is not None and abs(r) > best_r:
            best, best_r = other, abs(r)
    return best


def run_trend(ctx: PlanContext) -> AnalysisResult:
    time_col = ctx.time_column()
    if time_col is None:
        raise ColumnTypeMismatch("trend needs a datetime column")
    value_col = ctx.value_column()
    times = datetime_values(ctx.dataset.column(time_col))
    values = ctx.numeric(value_col)
    mask = ~(np.isnan(times) | np.isnan(values))
    order = np.argsort(times[mask], kind="stable")
    ts = times[mask][order]
    ys = values[mask][order]
    if ys.size < 2:
        raise TooFewRows("trend needs at least 2 points")
    window = min(7, max(1, ys.size // 10))
    rolling = [float(np.mean(ys[max(0, i - window + 1): i + 1])) for i in range(ys.size)]
    table = Table(
        columns=["time", value_col, f"rolling_mean_{window}"],
        rows=[[float(ts[i]), float(ys[i]), rolling[i]] for i in range(ys.size)],
    )
    direction = "up" if ys[-1] > ys[0] else ("down" if ys[-1] < ys[0] else "flat")
    findings = [
        ("value_column", value_col), ("time_column", time_col),
        ("window", window), ("direction", direction),
        ("first_value", float(ys[0])), ("last_value", float(ys[-1])),
    ]
    chart = ChartSpec(ChartKind.LINE, Encoding("time"), Encoding(value_col),
                      title=f"{value_col} over time")
    return AnalysisResult(ctx.plan, chart, {"trend": table}, findings)


def _context_profiles(ctx: PlanContext) -> TableProfile:
    """Profiles for the restricted dataset (original types, fresh columns)."""
    profiles = []
    for column in ctx.dataset.columns:
        try:
            ctype = ctx.ctype(column.name)
        except KeyError:
            ctype = ColumnType.NUMERIC if column.name.startswith("expr(") else ColumnType.TEXT
        try:
            profiles.append(profile_column(column, ctype))
        except Exception:
            continue
    return TableProfile(column_profiles=profiles, status=ctx.profiles.status,
                        row_count=ctx.dataset.row_count)


_EXECUTORS = {
    Intention.DISTRIBUTION: run_distribution,
    Intention.TREND: run_trend,
    Intention.FORECAST: run_forecast,
    Intention.COMPARISON: run_comparison,
    Intention.ROOT_CAUSE: run_root_cause,
    Intention.ANOMALY: run_anomaly,
    Intention.NORMALITY: run_normality,
    Intention.RELATIONSHIP: run_relationship,
    Intention.RANKING: run_ranking,
    Intention.PROPORTION: run_proportion,
    Intention.AGGREGATION: run_aggregation,
}


def execute(
    plan: QueryPlan,
    dataset: Dataset,
    profiles: TableProfile,
    config: AnalysisConfig | None = None,
) -> AnalysisResult:
    """Apply the plan's restrictions and dispatch to its intention executor."""
    executor = _EXECUTORS.get(plan.intention)
    if executor is None:
        raise UnknownIntention(f"no executor for intention {plan.intention!r}")
    for mention in plan.mentions:
        if not dataset.has_column(mention.column):
            raise ColumnTypeMismatch(f"unknown column {mention.column!r}")
    ctx = PlanContext(plan, dataset, profiles, config)
    result = executor(ctx)
    return _attach_summary(result)


def _attach_summary(result: AnalysisResult) -> AnalysisResult:
    """Mirror numeric findings into a key-value table so every number a
    template may cite is present in result.tables."""
    rows = [
        [key, float(value)]
        for key, value in result.findings
        if isinstance(value, (int, float)) and not isinstance(value, bool)
    ]
    if rows:
        result.tables.setdefault("summary", Table(columns=["key", "value"], rows=rows))
    return result
