"""Intention classification by keyword lexicon with arity fallback."""

from __future__ import annotations

from ..config import MatcherConfig
from ..profiling import ColumnType, TableProfile
from .lexicon import INTENTION_PHRASES, INTENTION_PRIORITY, phrase_occurrences
from .plans import ColumnMention, Intention

_PRIORITY_INDEX = {intention: i for i, intention in enumerate(INTENTION_PRIORITY)}


def _arity_fallback(
    mentions: list[ColumnMention], profiles: TableProfile | None
) -> Intention:
    """No keyword fired: choose by the type arity of the mentioned columns."""
    if profiles is None:
        return Intention.DISTRIBUTION
    types = []
    for mention in mentions:
        try:
            types.append(profiles.profile(mention.column).ctype)
        except KeyError:
            continue
    numeric = sum(1 for t in types if t == ColumnType.NUMERIC)
    nominal = sum(1 for t in types if t in (ColumnType.CATEGORICAL, ColumnType.BOOLEAN))
    datetimes = sum(1 for t in types if t == ColumnType.DATETIME)
    if numeric >= 2:
        return Intention.RELATIONSHIP
    if numeric >= 1 and nominal >= 1:
        return Intention.COMPARISON
    if numeric >= 1 and datetimes >= 1:
        return Intention.TREND
    if numeric == 1:
        return Intention.DISTRIBUTION
    if nominal >= 1:
        return Intention.PROPORTION
    return Intention.DISTRIBUTION


def classify_intention(
    tokens: list[str],
    mentions: list[ColumnMention] | tuple = (),
    profiles: TableProfile | None = None,
    config: MatcherConfig | None = None,
    excluded_spans: list[tuple[int, int]] | None = None,
) -> list[tuple[Intention, float]]:
    """Ranked (intention, score) list; scores are hit shares in [0, 1].

    Tokens inside column-mention spans never count as intention keywords.
    Ties break by the fixed priority order. With no keyword hits at all the
    arity fallback supplies a single candidate at the configured score.
    """
    config = config or MatcherConfig()
    mentions = list(mentions)
    spans = excluded_spans if excluded_spans is not None else [m.span for m in mentions]
    excluded = {i for span in spans for i in range(*span)}

    hits: dict[Intention, int] = {}
    for _, _, intention in phrase_occurrences(tokens, INTENTION_PHRASES, excluded):
        assert isinstance(intention, Intention)
        hits[intention] = hits.get(intention, 0) + 1

    if not hits:
        return [(_arity_fallback(mentions, profiles), config.fallback_intention_score)]

    total = sum(hits.values())
    ranked = sorted(hits.items(), key=lambda kv: (-kv[1], _PRIORITY_INDEX[kv[0]]))
    return [(intention, count / total) for intention, count in ranked]
