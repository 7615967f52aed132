"""Domain types for parsed questions."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum


class RestrictionKind(str, Enum):
    AVERAGE = "Average"
    MEDIAN = "Median"
    SUM = "Sum"
    GREATER_THAN = "GreaterThan"
    EQUAL_TO = "EqualTo"
    LESS_THAN = "LessThan"
    PLUS = "Plus"
    MINUS = "Minus"
    MULTIPLY = "Multiply"
    DIVIDE = "Divide"
    TOP = "Top"
    LAST = "Last"
    MAXIMUM = "Maximum"
    MINIMUM = "Minimum"


# Kinds that must carry a numeric operand.
OPERAND_KINDS = frozenset({
    RestrictionKind.GREATER_THAN,
    RestrictionKind.EQUAL_TO,
    RestrictionKind.LESS_THAN,
    RestrictionKind.PLUS,
    RestrictionKind.MINUS,
    RestrictionKind.MULTIPLY,
    RestrictionKind.DIVIDE,
    RestrictionKind.TOP,
    RestrictionKind.LAST,
})

# Kinds whose operand must be a positive integer (rank limits).
INTEGER_OPERAND_KINDS = frozenset({RestrictionKind.TOP, RestrictionKind.LAST})

FILTER_KINDS = frozenset({
    RestrictionKind.GREATER_THAN,
    RestrictionKind.EQUAL_TO,
    RestrictionKind.LESS_THAN,
})

ARITHMETIC_KINDS = frozenset({
    RestrictionKind.PLUS,
    RestrictionKind.MINUS,
    RestrictionKind.MULTIPLY,
    RestrictionKind.DIVIDE,
})

AGGREGATE_KINDS = frozenset({
    RestrictionKind.AVERAGE,
    RestrictionKind.MEDIAN,
    RestrictionKind.SUM,
    RestrictionKind.MAXIMUM,
    RestrictionKind.MINIMUM,
})


class Intention(str, Enum):
    DISTRIBUTION = "Distribution"
    TREND = "Trend"
    FORECAST = "Forecast"
    COMPARISON = "Comparison"
    ROOT_CAUSE = "RootCause"
    ANOMALY = "Anomaly"
    NORMALITY = "Normality"
    RELATIONSHIP = "Relationship"
    RANKING = "Ranking"
    PROPORTION = "Proportion"
    AGGREGATION = "Aggregation"


@dataclass(frozen=True)
class Restriction:
    kind: RestrictionKind
    operand: float | None = None
    target_column: str | None = None

    def __post_init__(self):
        if self.kind in OPERAND_KINDS and self.operand is None:
            raise ValueError(f"{self.kind.value} requires an operand")
        if self.kind in INTEGER_OPERAND_KINDS:
            if self.operand is None or self.operand <= 0 or self.operand != int(self.operand):
                raise ValueError(f"{self.kind.value} requires a positive integer operand")
        if self.kind in AGGREGATE_KINDS and self.operand is not None:
            raise ValueError(f"{self.kind.value} takes no operand")

    def signature(self) -> tuple[str, float | None]:
        """(kind, operand) pair used for evaluation equality."""
        return (self.kind.value, self.operand)

    def to_dict(self) -> dict:
        return {
            "kind": self.kind.value,
            "operand": self.operand,
            "target_column": self.target_column,
        }

    @classmethod
    def from_dict(cls, doc: dict) -> "Restriction":
        return cls(
            kind=RestrictionKind(doc["kind"]),
            operand=doc.get("operand"),
            target_column=doc.get("target_column"),
        )


@dataclass(frozen=True)
class ColumnMention:
    column: str
    score: float
    span: tuple[int, int]  # [start, end) token indices

    def to_dict(self) -> dict:
        return {"column": self.column, "score": self.score, "span": list(self.span)}

    @classmethod
    def from_dict(cls, doc: dict) -> "ColumnMention":
        return cls(doc["column"], doc["score"], tuple(doc["span"]))


@dataclass
class QueryPlan:
    mentions: list[ColumnMention] = field(default_factory=list)
    restrictions: list[Restriction] = field(default_factory=list)
    intention: Intention = Intention.DISTRIBUTION
    confidence: float = 0.0

    def mentioned_columns(self) -> list[str]:
        return [m.column for m in self.mentions]

    def to_dict(self) -> dict:
        return {
            "mentions": [m.to_dict() for m in self.mentions],
            "restrictions": [r.to_dict() for r in self.restrictions],
            "intention": self.intention.value,
            "confidence": self.confidence,
        }

    @classmethod
    def from_dict(cls, doc: dict) -> "QueryPlan":
        return cls(
            mentions=[ColumnMention.from_dict(m) for m in doc.get("mentions", [])],
            restrictions=[Restriction.from_dict(r) for r in doc.get("restrictions", [])],
            intention=Intention(doc["intention"]),
            confidence=doc.get("confidence", 0.0),
        )


@dataclass
class MatchResult:
    candidates: list[QueryPlan]

    @property
    def top(self) -> QueryPlan:
        return self.candidates[0]

    def to_dict(self) -> dict:
        return {"candidates": [c.to_dict() for c in self.candidates]}

    @classmethod
    def from_dict(cls, doc: dict) -> "MatchResult":
        return cls([QueryPlan.from_dict(c) for c in doc["candidates"]])
