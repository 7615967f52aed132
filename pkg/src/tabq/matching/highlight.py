"""Keyword-class spans for UI highlighting.

The console renders the parsed question with the three keyword classes
visually distinguished; the spans are computed here, server-side, so the
client stays a pure view of API responses.
"""

from __future__ import annotations

from ..config import MatcherConfig
from ..profiling import TableProfile
from .columns import resolve_column_spans
from .lexicon import INTENTION_PHRASES, RESTRICTION_PHRASES, phrase_occurrences
from .normalize import normalize


def highlight_spans(
    question: str,
    profiles: TableProfile,
    config: MatcherConfig | None = None,
) -> dict:
    """Token list plus [start, end) spans per keyword class."""
    tokens = normalize(question)
    mentions = resolve_column_spans(tokens, profiles, config)
    excluded = {i for m in mentions for i in range(*m.span)}
    restriction_hits = phrase_occurrences(tokens, RESTRICTION_PHRASES, excluded)
    # display precedence: a token claimed as a restriction keyword is not
    # also painted as an intention keyword (the matcher scores both)
    claimed = excluded | {i for s, e, _ in restriction_hits for i in range(s, e)}
    intention_hits = phrase_occurrences(tokens, INTENTION_PHRASES, claimed)
    return {
        "tokens": tokens,
        "column": [[m.span[0], m.span[1]] for m in mentions],
        "restriction": [[start, end] for start, end, _ in restriction_hits],
        "intention": [[start, end] for start, end, _ in intention_hits],
    }
