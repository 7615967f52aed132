"""Number formatting and numeral-fidelity checks.

Every number that reaches generated text goes through fmt_num, so the
fidelity rule is a pure string check: each numeral extracted from a text
must equal fmt_num of some known fact value.
"""

from __future__ import annotations

import re

# digits embedded in identifiers (level names like "m0") are not numerals
_NUMERAL_RE = re.compile(r"(?<![\w.])-?\d+(?:\.\d+)?(?:e[+-]?\d+)?(?![\w.])")


def fmt_num(value: float | int) -> str:
    """Canonical rendering: integers bare, floats at 6 significant digits."""
    if isinstance(value, bool):
        return str(int(value))
    if isinstance(value, int):
        return str(value)
    if value == int(value) and abs(value) < 1e15:
        return str(int(value))
    return format(value, ".6g")


def extract_numerals(text: str) -> list[str]:
    return _NUMERAL_RE.findall(text)


def numerals_traceable(text: str, facts: list[float | int]) -> bool:
    """True when every numeral in the text renders from one of the facts."""
    rendered = {fmt_num(v) for v in facts}
    # minus signs may be swallowed by prose; accept the absolute form too
    rendered |= {fmt_num(abs(v)) for v in facts}
    return all(numeral in rendered for numeral in extract_numerals(text))


def numbers_survive(template_text: str, candidate_text: str) -> bool:
    """Paraphrase post-check: all template numerals appear in the candidate."""
    wanted = extract_numerals(template_text)
    have = set(extract_numerals(candidate_text))
    return all(n in have for n in wanted)
