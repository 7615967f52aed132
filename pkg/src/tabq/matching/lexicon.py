"""Phrase lexicons for restriction and intention detection.

These tables are the fixed vocabulary of the rule-based matcher (see
docs/matching.md). Multi-word phrases are matched greedily, longest first,
and a token claimed by a column mention is never counted as a restriction
or intention keyword.
"""

from __future__ import annotations

from .plans import Intention, RestrictionKind

# phrase -> restriction kind; phrases are normalized token tuples
RESTRICTION_PHRASES: dict[tuple[str, ...], RestrictionKind] = {
    ("average",): RestrictionKind.AVERAGE,
    ("mean",): RestrictionKind.AVERAGE,
    ("avg",): RestrictionKind.AVERAGE,
    ("median",): RestrictionKind.MEDIAN,
    ("sum",): RestrictionKind.SUM,
    ("total",): RestrictionKind.SUM,
    ("greater", "than"): RestrictionKind.GREATER_THAN,
    ("more", "than"): RestrictionKind.GREATER_THAN,
    ("higher", "than"): RestrictionKind.GREATER_THAN,
    ("bigger", "than"): RestrictionKind.GREATER_THAN,
    ("above",): RestrictionKind.GREATER_THAN,
    ("exceeding",): RestrictionKind.GREATER_THAN,
    ("exceeds",): RestrictionKind.GREATER_THAN,
    ("equal", "to"): RestrictionKind.EQUAL_TO,
    ("equals",): RestrictionKind.EQUAL_TO,
    ("equal",): RestrictionKind.EQUAL_TO,
    ("exactly",): RestrictionKind.EQUAL_TO,
    ("less", "than"): RestrictionKind.LESS_THAN,
    ("fewer", "than"): RestrictionKind.LESS_THAN,
    ("lower", "than"): RestrictionKind.LESS_THAN,
    ("smaller", "than"): RestrictionKind.LESS_THAN,
    ("below",): RestrictionKind.LESS_THAN,
    ("under",): RestrictionKind.LESS_THAN,
    ("plus",): RestrictionKind.PLUS,
    ("added", "to"): RestrictionKind.PLUS,
    ("minus",): RestrictionKind.MINUS,
    ("multiplied", "by"): RestrictionKind.MULTIPLY,
    ("multiply", "by"): RestrictionKind.MULTIPLY,
    ("times",): RestrictionKind.MULTIPLY,
    ("divided", "by"): RestrictionKind.DIVIDE,
    ("divide", "by"): RestrictionKind.DIVIDE,
    ("top",): RestrictionKind.TOP,
    ("last",): RestrictionKind.LAST,
    ("bottom",): RestrictionKind.LAST,
    ("maximum",): RestrictionKind.MAXIMUM,
    ("max",): RestrictionKind.MAXIMUM,
    ("highest",): RestrictionKind.MAXIMUM,
    ("largest",): RestrictionKind.MAXIMUM,
    ("biggest",): RestrictionKind.MAXIMUM,
    ("peak",): RestrictionKind.MAXIMUM,
    ("minimum",): RestrictionKind.MINIMUM,
    ("min",): RestrictionKind.MINIMUM,
    ("lowest",): RestrictionKind.MINIMUM,
    ("smallest",): RestrictionKind.MINIMUM,
}

# Kinds whose target is the plan itself (rank limits), never a column.
PLAN_LEVEL_KINDS = frozenset({RestrictionKind.TOP, RestrictionKind.LAST})

# phrase -> intention; each phrase belongs to exactly one intention
INTENTION_PHRASES: dict[tuple[str, ...], Intention] = {
    ("distribution",): Intention.DISTRIBUTION,
    ("distributed",): Intention.DISTRIBUTION,
    ("histogram",): Intention.DISTRIBUTION,
    ("spread",): Intention.DISTRIBUTION,
    ("trend",): Intention.TREND,
    ("trends",): Intention.TREND,
    ("over", "time"): Intention.TREND,
    ("time", "series"): Intention.TREND,
    ("evolution",): Intention.TREND,
    ("trajectory",): Intention.TREND,
    ("forecast",): Intention.FORECAST,
    ("predict",): Intention.FORECAST,
    ("prediction",): Intention.FORECAST,
    ("projection",): Intention.FORECAST,
    ("future",): Intention.FORECAST,
    ("next",): Intention.FORECAST,
    ("expect",): Intention.FORECAST,
    ("expected",): Intention.FORECAST,
    ("compare",): Intention.COMPARISON,
    ("comparison",): Intention.COMPARISON,
    ("compared",): Intention.COMPARISON,
    ("versus",): Intention.COMPARISON,
    ("vs",): Intention.COMPARISON,
    ("contrast",): Intention.COMPARISON,
    ("across",): Intention.COMPARISON,
    ("root", "cause"): Intention.ROOT_CAUSE,
    ("why",): Intention.ROOT_CAUSE,
    ("driver",): Intention.ROOT_CAUSE,
    ("drivers",): Intention.ROOT_CAUSE,
    ("drive",): Intention.ROOT_CAUSE,
    ("drives",): Intention.ROOT_CAUSE,
    ("driving",): Intention.ROOT_CAUSE,
    ("difference",): Intention.ROOT_CAUSE,
    ("differences",): Intention.ROOT_CAUSE,
    ("differ",): Intention.ROOT_CAUSE,
    ("affect",): Intention.ROOT_CAUSE,
    ("affects",): Intention.ROOT_CAUSE,
    ("affecting",): Intention.ROOT_CAUSE,
    ("impact",): Intention.ROOT_CAUSE,
    ("impacts",): Intention.ROOT_CAUSE,
    ("influence",): Intention.ROOT_CAUSE,
    ("influences",): Intention.ROOT_CAUSE,
    ("factor",): Intention.ROOT_CAUSE,
    ("factors",): Intention.ROOT_CAUSE,
    ("cause",): Intention.ROOT_CAUSE,
    ("causes",): Intention.ROOT_CAUSE,
    ("due", "to"): Intention.ROOT_CAUSE,
    ("anomaly",): Intention.ANOMALY,
    ("anomalies",): Intention.ANOMALY,
    ("outlier",): Intention.ANOMALY,
    ("outliers",): Intention.ANOMALY,
    ("unusual",): Intention.ANOMALY,
    ("abnormal",): Intention.ANOMALY,
    ("irregular",): Intention.ANOMALY,
    ("normal",): Intention.NORMALITY,
    ("normally",): Intention.NORMALITY,
    ("normality",): Intention.NORMALITY,
    ("gaussian",): Intention.NORMALITY,
    ("bell", "curve"): Intention.NORMALITY,
    ("bell", "shaped"): Intention.NORMALITY,
    ("relationship",): Intention.RELATIONSHIP,
    ("relationships",): Intention.RELATIONSHIP,
    ("relate",): Intention.RELATIONSHIP,
    ("relates",): Intention.RELATIONSHIP,
    ("related",): Intention.RELATIONSHIP,
    ("relation",): Intention.RELATIONSHIP,
    ("correlation",): Intention.RELATIONSHIP,
    ("correlate",): Intention.RELATIONSHIP,
    ("correlated",): Intention.RELATIONSHIP,
    ("association",): Intention.RELATIONSHIP,
    ("associated",): Intention.RELATIONSHIP,
    ("depend",): Intention.RELATIONSHIP,
    ("depends",): Intention.RELATIONSHIP,
    ("dependence",): Intention.RELATIONSHIP,
    ("rank",): Intention.RANKING,
    ("ranking",): Intention.RANKING,
    ("ranked",): Intention.RANKING,
    ("top",): Intention.RANKING,
    ("bottom",): Intention.RANKING,
    ("best",): Intention.RANKING,
    ("worst",): Intention.RANKING,
    ("leaderboard",): Intention.RANKING,
    ("proportion",): Intention.PROPORTION,
    ("share",): Intention.PROPORTION,
    ("shares",): Intention.PROPORTION,
    ("percentage",): Intention.PROPORTION,
    ("percent",): Intention.PROPORTION,
    ("ratio",): Intention.PROPORTION,
    ("breakdown",): Intention.PROPORTION,
    ("composition",): Intention.PROPORTION,
    ("fraction",): Intention.PROPORTION,
    ("average",): Intention.AGGREGATION,
    ("mean",): Intention.AGGREGATION,
    ("median",): Intention.AGGREGATION,
    ("sum",): Intention.AGGREGATION,
    ("total",): Intention.AGGREGATION,
    ("maximum",): Intention.AGGREGATION,
    ("minimum",): Intention.AGGREGATION,
    ("max",): Intention.AGGREGATION,
    ("min",): Intention.AGGREGATION,
    ("overall",): Intention.AGGREGATION,
    ("how", "many"): Intention.AGGREGATION,
    ("count",): Intention.AGGREGATION,
}

# Tie-break priority, strongest first.
INTENTION_PRIORITY: tuple[Intention, ...] = (
    Intention.ROOT_CAUSE,
    Intention.COMPARISON,
    Intention.FORECAST,
    Intention.ANOMALY,
    Intention.NORMALITY,
    Intention.RELATIONSHIP,
    Intention.RANKING,
    Intention.TREND,
    Intention.PROPORTION,
    Intention.AGGREGATION,
    Intention.DISTRIBUTION,
)


def phrase_occurrences(
    tokens: list[str],
    phrases: dict[tuple[str, ...], object],
    excluded: set[int],
) -> list[tuple[int, int, object]]:
    """Non-overlapping (start, end, value) phrase matches, longest first.

    Token positions in ``excluded`` (column-mention spans) never match.
    """
    taken: set[int] = set()
    hits: list[tuple[int, int, object]] = []
    for length in sorted({len(p) for p in phrases}, reverse=True):
        for start in range(0, len(tokens) - length + 1):
            span = range(start, start + length)
            if any(i in excluded or i in taken for i in span):
                continue
            candidate = tuple(tokens[start:start + length])
            if candidate in phrases:
                hits.append((start, start + length, phrases[candidate]))
                taken.update(span)
    hits.sort(key=lambda h: h[0])
    return hits
