"""Restriction phrase parsing and column binding."""

from __future__ import annotations

from ..config import MatcherConfig
from ..errors import DanglingOperandRequired
from .lexicon import PLAN_LEVEL_KINDS, RESTRICTION_PHRASES, phrase_occurrences
from .normalize import is_numeral
from .plans import (
    INTEGER_OPERAND_KINDS,
    OPERAND_KINDS,
    ColumnMention,
    Restriction,
    RestrictionKind,
)


def _find_operand(
    tokens: list[str],
    start: int,
    end: int,
    used: set[int],
    window: int,
    integer_only: bool,
) -> tuple[float, int] | None:
    """First usable numeral within `window` tokens after the phrase, else before."""
    def usable(i: int) -> float | None:
        if i in used or not (0 <= i < len(tokens)) or not is_numeral(tokens[i]):
            return None
        value = float(tokens[i])
        if integer_only and (value <= 0 or value != int(value)):
            return None
        return value

    for i in range(end, min(len(tokens), end + window)):
        value = usable(i)
        if value is not None:
            return value, i
    for i in range(start - 1, max(-1, start - 1 - window), -1):
        value = usable(i)
        if value is not None:
            return value, i
    return None


def _nearest_mention(
    span: tuple[int, int],
    mentions: list[ColumnMention],
    window: int,
) -> str | None:
    """Column of the closest mention with at most `window` tokens between.

    Distance ties prefer the mention after the phrase ("sum of sales"
    binds forward, not back to an earlier column).
    """
    best: tuple[int, int, int, str] | None = None
    for mention in mentions:
        m_start, m_end = mention.span
        if m_end <= span[0]:
            gap, direction = span[0] - m_end, 1
        elif m_start >= span[1]:
            gap, direction = m_start - span[1], 0
        else:
            gap, direction = 0, 0
        if gap <= window and (best is None or (gap, direction, m_start) < best[:3]):
            best = (gap, direction, m_start, mention.column)
    return best[3] if best else None


def parse_restrictions_lenient(
    tokens: list[str],
    mentions: list[ColumnMention] | tuple = (),
    config: MatcherConfig | None = None,
) -> tuple[list[Restriction], int]:
    """Extract every non-overlapping restriction phrase from the tokens.

    Operands bind to the first adjacent numeral; each numeral feeds at most
    one restriction. Aggregate and filter restrictions bind to the nearest
    column mention within the configured window; rank limits (Top/Last)
    stay plan-level. A phrase whose required operand cannot be found is
    dropped; the drop count is returned with the kept restrictions.
    """
    config = config or MatcherConfig()
    mentions = list(mentions)
    excluded = {i for m in mentions for i in range(*m.span)}
    hits = phrase_occurrences(tokens, RESTRICTION_PHRASES, excluded)

    used_numerals: set[int] = set()
    restrictions: list[Restriction] = []
    dropped = 0
    for start, end, kind in hits:
        assert isinstance(kind, RestrictionKind)
        operand = None
        if kind in OPERAND_KINDS:
            found = _find_operand(
                tokens, start, end, used_numerals,
                config.operand_window, kind in INTEGER_OPERAND_KINDS,
            )
            if found is None:
                dropped += 1
                continue
            operand, numeral_index = found
            used_numerals.add(numeral_index)
        target = None
        if kind not in PLAN_LEVEL_KINDS:
            target = _nearest_mention((start, end), mentions, config.binding_window)
        restrictions.append(Restriction(kind, operand, target))
    return restrictions, dropped


def parse_restrictions(
    tokens: list[str],
    mentions: list[ColumnMention] | tuple = (),
    config: MatcherConfig | None = None,
) -> list[Restriction]:
    """Strict variant: a restriction missing its required operand raises."""
    restrictions, dropped = parse_restrictions_lenient(tokens, mentions, config)
    if dropped:
        raise DanglingOperandRequired(
            f"{dropped} restriction phrase(s) require an operand with no adjacent numeral"
        )
    return restrictions
