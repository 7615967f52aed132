"""Question tokenization."""

from __future__ import annotations

import re

from ..errors import EmptyQuestion

# Number words resolved to numerals: zero through twenty plus the tens.
NUMBER_WORDS = {
    "zero": "0", "one": "1", "two": "2", "three": "3", "four": "4",
    "five": "5", "six": "6", "seven": "7", "eight": "8", "nine": "9",
    "ten": "10", "eleven": "11", "twelve": "12", "thirteen": "13",
    "fourteen": "14", "fifteen": "15", "sixteen": "16", "seventeen": "17",
    "eighteen": "18", "nineteen": "19", "twenty": "20",
    "thirty": "30", "forty": "40", "fifty": "50", "sixty": "60",
    "seventy": "70", "eighty": "80", "ninety": "90",
}

_TOKEN_RE = re.compile(r"\d+\.\d+|\d+|[a-z]+")


def normalize(question: str) -> list[str]:
    """Lower-cased, punctuation-free tokens with number words resolved."""
    if not question or not question.strip():
        raise EmptyQuestion("question is empty")
    tokens = _TOKEN_RE.findall(question.casefold())
    if not tokens:
        raise EmptyQuestion("question contains no tokens")
    return [NUMBER_WORDS.get(t, t) for t in tokens]


def is_numeral(token: str) -> bool:
    try:
        float(token)
    except ValueError:
        return False
    return True
