"""Column mention detection over normalized question tokens."""

from __future__ import annotations

import re

from ..config import MatcherConfig
from ..profiling import TableProfile
from .plans import ColumnMention

_NAME_TOKEN_RE = re.compile(r"\d+\.\d+|\d+|[a-z]+")


def column_tokens(name: str) -> tuple[str, ...]:
    """Column name split into normalized tokens ('unit_price' -> unit, price)."""
    return tuple(_NAME_TOKEN_RE.findall(name.casefold()))


def levenshtein(a: str, b: str) -> int:
    if len(a) < len(b):
        a, b = b, a
    previous = list(range(len(b) + 1))
    for i, ca in enumerate(a, start=1):
        current = [i]
        for j, cb in enumerate(b, start=1):
            current.append(min(
                previous[j] + 1,
                current[j - 1] + 1,
                previous[j - 1] + (ca != cb),
            ))
        previous = current
    return previous[-1]


def similarity(a: str, b: str) -> float:
    """1 - normalized edit distance; 1.0 iff the strings are equal."""
    if a == b:
        return 1.0
    longest = max(len(a), len(b))
    if longest == 0:
        return 0.0
    return 1.0 - levenshtein(a, b) / longest


def resolve_column_spans(
    tokens: list[str],
    profiles: TableProfile,
    config: MatcherConfig | None = None,
) -> list[ColumnMention]:
    """All non-overlapping column mentions, longest span first on conflicts.

    The alias table is consulted before the column names themselves; exact
    normalized matches score 1.0, fuzzy n-gram matches keep scores above the
    configured threshold. Mentions of the same column at several spans are
    all returned (the matcher needs every span to mask keyword detection).
    """
    config = config or MatcherConfig()
    names = [p.name for p in profiles.column_profiles]
    targets: list[tuple[tuple[str, ...], str, bool]] = []
    for alias, column in config.aliases.items():
        if column in names:
            targets.append((column_tokens(alias), column, True))
    for name in names:
        targets.append((column_tokens(name), name, False))

    candidates: list[tuple[int, ColumnMention, bool]] = []
    n = len(tokens)
    for target_tokens, column, is_alias in targets:
        t_len = len(target_tokens)
        if t_len == 0:
            continue
        target_text = " ".join(target_tokens)
        lengths = {t_len}
        if t_len > 1:
            lengths.add(t_len - 1)
        if t_len + 1 <= n:
            lengths.add(t_len + 1)
        for length in sorted(lengths):
            for start in range(0, n - length + 1):
                gram = " ".join(tokens[start:start + length])
                score = similarity(gram, target_text)
                if score >= config.fuzzy_threshold:
                    mention = ColumnMention(column, score, (start, start + length))
                    candidates.append((0 if is_alias else 1, mention, is_alias))

    # exact matches outrank fuzzy ones; among equal scores the longest span
    # wins overlaps, then alias priority and position
    candidates.sort(
        key=lambda c: (
            -c[1].score,
            -(c[1].span[1] - c[1].span[0]),
            c[0],
            c[1].span[0],
            c[1].column,
        )
    )
    taken: set[int] = set()
    resolved: list[ColumnMention] = []
    for _, mention, _ in candidates:
        span = range(*mention.span)
        if any(i in taken for i in span):
            continue
        taken.update(span)
        resolved.append(mention)
    resolved.sort(key=lambda m: m.span[0])
    return resolved


def match_columns(
    tokens: list[str],
    profiles: TableProfile,
    config: MatcherConfig | None = None,
) -> list[ColumnMention]:
    """Column mentions deduplicated per column (best-scoring span kept)."""
    best: dict[str, ColumnMention] = {}
    for mention in resolve_column_spans(tokens, profiles, config):
        kept = best.get(mention.column)
        if kept is None or mention.score > kept.score:
            best[mention.column] = mention
    return sorted(best.values(), key=lambda m: m.span[0])
