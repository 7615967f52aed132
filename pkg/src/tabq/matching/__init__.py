"""Question matching: tokens -> column mentions + restrictions + intention."""

from .columns import match_columns, resolve_column_spans
from .plans import (
    ColumnMention,
    Intention,
    MatchResult,
    QueryPlan,
    Restriction,
    RestrictionKind,
)
from .evaluate import CorpusRecord, evaluate_matcher, load_corpus
from .highlight import highlight_spans
from .intention import classify_intention
from .matcher import match_question
from .normalize import normalize
from .restrictions import parse_restrictions, parse_restrictions_lenient

__all__ = [
    "ColumnMention",
    "CorpusRecord",
    "Intention",
    "MatchResult",
    "QueryPlan",
    "Restriction",
    "RestrictionKind",
    "classify_intention",
    "evaluate_matcher",
    "highlight_spans",
    "load_corpus",
    "match_columns",
    "match_question",
    "normalize",
    "parse_restrictions",
    "parse_restrictions_lenient",
    "resolve_column_spans",
]
