"""Per-intention prose templates over analysis findings."""

from __future__ import annotations

from ..analysis.result import AnalysisResult
from ..errors import UnknownIntention
from ..matching.plans import Intention
from .knowledge import KnowledgeSnippet
from .render import extract_numerals, fmt_num


def _f(result: AnalysisResult, key: str, default=None):
    value = result.finding(key, default)
    return value


def _explain_distribution(r: AnalysisResult) -> str:
    return (
        f"The values of {_f(r, 'column')} center on a mean of {fmt_num(_f(r, 'mean'))} "
        f"with a median of {fmt_num(_f(r, 'median'))}, shown as a histogram with "
        f"{fmt_num(_f(r, 'bin_count'))} bins over {fmt_num(_f(r, 'n'))} values."
    )


def _explain_trend(r: AnalysisResult) -> str:
    return (
        f"Over time, {_f(r, 'value_column')} moved {_f(r, 'direction')} from "
        f"{fmt_num(_f(r, 'first_value'))} to {fmt_num(_f(r, 'last_value'))} "
        f"(rolling window of {fmt_num(_f(r, 'window'))})."
    )


def _explain_forecast(r: AnalysisResult) -> str:
    return (
        f"Projecting {_f(r, 'value_column')} forward {fmt_num(_f(r, 'horizon'))} steps "
        f"with a per-step trend of {fmt_num(_f(r, 'trend_per_step'))} puts the final "
        f"point at {fmt_num(_f(r, 'last_prediction'))}."
    )


def _explain_comparison(r: AnalysisResult) -> str:
    p = _f(r, "p_value")
    base = (
        f"Comparing {_f(r, 'value_column')} across the {fmt_num(_f(r, 'groups'))} levels "
        f"of {_f(r, 'group_column')}"
    )
    if p is None:
        return base + " shows per-group means and spreads in the table."
    if p >= 0.05:
        return (
            base + f" shows no significant difference between {_f(r, 'group_a')} and "
            f"{_f(r, 'group_b')} (p = {fmt_num(p)})."
        )
    return (
        base + f" shows a significant difference between {_f(r, 'group_a')} and "
        f"{_f(r, 'group_b')} (p = {fmt_num(p)})."
    )


def _explain_root_cause(r: AnalysisResult) -> str:
    top = _f(r, "top_factor")
    if top is None:
        return f"No scorable factors separate high and low {_f(r, 'target')}."
    return (
        f"Splitting rows by {_f(r, 'split')} ({fmt_num(_f(r, 'high_n'))} high vs "
        f"{fmt_num(_f(r, 'low_n'))} low), {top} is the top factor with a separation "
        f"score of {fmt_num(_f(r, 'top_factor_score'))}; factors further down the "
        f"table matter progressively less."
    )


def _explain_anomaly(r: AnalysisResult) -> str:
    count = _f(r, "outlier_count")
    if _f(r, "degenerate"):
        return (
            f"All but {fmt_num(count)} values of {_f(r, 'column')} are identical, so "
            f"ordinary spread-based scoring degenerates; any distinct value is flagged."
        )
    if count == 0:
        return f"No outliers stand out among the {fmt_num(_f(r, 'n'))} values of {_f(r, 'column')}."
    return (
        f"{fmt_num(count)} of {fmt_num(_f(r, 'n'))} values of {_f(r, 'column')} sit far "
        f"enough from the median to be flagged as outliers."
    )


def _explain_normality(r: AnalysisResult) -> str:
    return (
        f"A skewness-and-kurtosis test of {_f(r, 'column')} gives a statistic of "
        f"{fmt_num(_f(r, 'jb_statistic'))} (p = {fmt_num(_f(r, 'p_value'))}); the sample "
        f"is {_f(r, 'verdict')}."
    )


def _explain_relationship(r: AnalysisResult) -> str:
    return (
        f"{_f(r, 'column_b')} moves with {_f(r, 'column_a')} at a correlation of "
        f"{fmt_num(_f(r, 'pearson_r'))}; the fitted line has slope {fmt_num(_f(r, 'slope'))} "
        f"and intercept {fmt_num(_f(r, 'intercept'))}, explaining "
        f"{fmt_num(_f(r, 'r_squared'))} of the variance."
    )


def _explain_ranking(r: AnalysisResult) -> str:
    lead_label = _f(r, "lead_label")
    lead = (
        f"{lead_label} leads at {fmt_num(_f(r, 'lead_value'))}"
        if lead_label is not None
        else f"the leading value is {fmt_num(_f(r, 'lead_value'))}"
    )
    return (
        f"Ranking by {_f(r, 'value_column')} ({_f(r, 'direction')} "
        f"{fmt_num(_f(r, 'limit'))}), {lead}."
    )


def _explain_proportion(r: AnalysisResult) -> str:
    return (
        f"{_f(r, 'column')} splits into {fmt_num(_f(r, 'levels'))} levels; "
        f"{_f(r, 'top_level')} is the largest at a share of {fmt_num(_f(r, 'top_share'))}."
    )


def _explain_aggregation(r: AnalysisResult) -> str:
    parts = []
    for key in ("average", "median", "sum", "maximum", "minimum"):
        value = _f(r, key)
        if value is not None:
            parts.append(f"{key} {fmt_num(value)}")
    if parts:
        return f"For {_f(r, 'column')}: " + ", ".join(parts) + "."
    return f"Aggregates of {_f(r, 'column')} by {_f(r, 'group_column')} are tabulated."


_TEMPLATES = {
    Intention.DISTRIBUTION: _explain_distribution,
    Intention.TREND: _explain_trend,
    Intention.FORECAST: _explain_forecast,
    Intention.COMPARISON: _explain_comparison,
    Intention.ROOT_CAUSE: _explain_root_cause,
    Intention.ANOMALY: _explain_anomaly,
    Intention.NORMALITY: _explain_normality,
    Intention.RELATIONSHIP: _explain_relationship,
    Intention.RANKING: _explain_ranking,
    Intention.PROPORTION: _explain_proportion,
    Intention.AGGREGATION: _explain_aggregation,
}


def explain_result(
    result: AnalysisResult,
    snippets: list[KnowledgeSnippet] | None = None,
) -> str:
    """Render a result's findings into prose, with optional domain context.

    At most two retrieved snippets are appended. Every numeral in the text
    must trace back to the result's tables, so snippets containing numerals
    of their own are skipped rather than quoted.
    """
    template = _TEMPLATES.get(result.plan.intention)
    if template is None:
        raise UnknownIntention(f"no explanation template for {result.plan.intention!r}")
    text = template(result)
    usable = [s for s in (snippets or []) if not extract_numerals(s.text)][:2]
    if usable:
        context = " ".join(s.text for s in usable)
        text += f" Domain context: {context}"
    return text
