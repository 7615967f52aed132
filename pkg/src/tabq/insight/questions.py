"""Suggested-question generation from profile interestingness."""

from __future__ import annotations

import math
from dataclasses import dataclass

from ..config import MatcherConfig
from ..errors import EngineError, TooFewColumns
from ..matching import QueryPlan, match_question
from ..matching.plans import Intention
from ..profiling import ColumnType, TableProfile
from .summary import strongest_pairs


@dataclass
class SuggestedQuestion:
    text: str
    plan: QueryPlan
    intention: Intention

    def to_dict(self) -> dict:
        return {"text": self.text, "intention": self.intention.value, "plan": self.plan.to_dict()}


def _entropy(profile) -> float:
    stats = profile.categorical_stats or []
    total = sum(count for _, count in stats)
    if total == 0:
        return 0.0
    out = 0.0
    for _, count in stats:
        p = count / total
        out -= p * math.log(p)
    return out


def interestingness(profiles: TableProfile) -> list[tuple[str, float]]:
    """Columns ranked by normalized rank sum of association strength,
    missing fraction, and variance (numeric) or entropy (categorical)."""
    columns = [p.name for p in profiles.column_profiles]
    m = len(columns)
    if m == 0:
        return []

    assoc_strength = {}
    matrix = profiles.association
    for name in columns:
        best = 0.0
        if matrix and name in matrix.columns:
            i = matrix.columns.index(name)
            for j, other in enumerate(matrix.columns):
                if other != name and matrix.values[i][j] is not None:
                    best = max(best, abs(matrix.values[i][j]))
        assoc_strength[name] = best

    missing_frac = {
        p.name: (p.missing_count / p.count if p.count else 0.0)
        for p in profiles.column_profiles
    }
    spread = {}
    for p in profiles.column_profiles:
        if p.ctype == ColumnType.NUMERIC and p.numeric_stats:
            spread[p.name] = p.numeric_stats.sample_std**2
        else:
            spread[p.name] = _entropy(p)

    def rank_scores(values: dict[str, float]) -> dict[str, float]:
        ordered = sorted(columns, key=lambda c: (-values[c], c))
        return {c: (m - i) / m for i, c in enumerate(ordered)}

    r1, r2, r3 = rank_scores(assoc_strength), rank_scores(missing_frac), rank_scores(spread)
    total = {c: (r1[c] + r2[c] + r3[c]) / 3.0 for c in columns}
    return sorted(total.items(), key=lambda kv: (-kv[1], kv[0]))


def _template_pool(profiles: TableProfile) -> list[tuple[Intention, str]]:
    """(intention, template) pairs; {num}/{cat}/{pair_a}/{pair_b} placeholders."""
    has_datetime = bool(profiles.columns_of_type(ColumnType.DATETIME))
    pool = [
        (Intention.RELATIONSHIP, "How does {pair_a} relate to {pair_b}?"),
        (Intention.ROOT_CAUSE, "What drives the difference between high and low {num}?"),
        (Intention.DISTRIBUTION, "What is the distribution of {num}?"),
        (Intention.COMPARISON, "How does {num} compare across {cat}?"),
        (Intention.PROPORTION, "What share does each {cat} account for?"),
        (Intention.ANOMALY, "Are there outliers in {num}?"),
        (Intention.NORMALITY, "Is {num} normally distributed?"),
        (Intention.RANKING, "What are the top 5 {cat} by sum of {num}?"),
        (Intention.AGGREGATION, "What is the average {num}?"),
    ]
    if has_datetime:
        pool.insert(3, (Intention.TREND, "How has {num} changed over time?"))
        pool.append((Intention.FORECAST, "Forecast {num} for the next periods"))
    return pool


def generate_top_questions(
    profiles: TableProfile,
    k: int = 10,
    matcher_config: MatcherConfig | None = None,
) -> list[SuggestedQuestion]:
    """Exactly k unique questions whose plans round-trip through the matcher.

    Each candidate question is parsed by match_question and kept only when
    the Top1 intention agrees with the template that produced it, so the
    round-trip property holds by construction.
    """
    if len(profiles.column_profiles) < 2:
        raise TooFewColumns("question generation needs at least 2 columns")

    ranked = [name for name, _ in interestingness(profiles)]
    numeric = [c for c in ranked if profiles.profile(c).ctype == ColumnType.NUMERIC]
    nominal = [
        c for c in ranked
        if profiles.profile(c).ctype in (ColumnType.CATEGORICAL, ColumnType.BOOLEAN)
    ]
    pairs = [
        (a, b) for a, b, _ in strongest_pairs(profiles, k=max(3, k))
        if profiles.profile(a).ctype == ColumnType.NUMERIC
        and profiles.profile(b).ctype == ColumnType.NUMERIC
    ]

    pool = _template_pool(profiles)
    questions: list[SuggestedQuestion] = []
    seen_texts: set[str] = set()
    depth = 0
    while len(questions) < k and depth < max(4, k):
        for intention, template in pool:
            if len(questions) >= k:
                break
            num = numeric[depth % len(numeric)] if numeric else None
            cat = nominal[depth % len(nominal)] if nominal else None
            pair = pairs[depth % len(pairs)] if pairs else None
            text = template
            if "{pair_a}" in text:
                if pair is None:
                    continue
                text = text.replace("{pair_a}", _speakable(pair[0]))
                text = text.replace("{pair_b}", _speakable(pair[1]))
            if "{num}" in text:
                if num is None:
                    continue
                text = text.replace("{num}", _speakable(num))
            if "{cat}" in text:
                if cat is None:
                    continue
                text = text.replace("{cat}", _speakable(cat))
            if text in seen_texts:
                continue
            try:
                result = match_question(text, profiles, matcher_config)
            except EngineError:
                continue
            if result.top.intention != intention:
                continue
            seen_texts.add(text)
            questions.append(SuggestedQuestion(text, result.top, intention))
        depth += 1

    if len(questions) < k:
        raise TooFewColumns(
            f"could only generate {len(questions)} of {k} questions for this table"
        )
    return questions[:k]


def _speakable(column: str) -> str:
    """Column name as it reads in a question (underscores become spaces)."""
    return column.replace("_", " ")
