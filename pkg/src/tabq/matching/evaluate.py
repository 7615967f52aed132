"""Corpus evaluation harness: Top1/Top3 accuracy per question aspect.

Corpus format is JSON lines, one record per question:

    {"question": "...", "source": "sales",
     "gold_columns": ["product", "sales"],
     "gold_intention": "Ranking",
     "gold_restrictions": [{"kind": "Top", "operand": 10}]}

The output table has one row per data source and six accuracy cells:
Top1/Top3 for the column, intention, and restriction aspects. A hit at
rank 1 counts toward both Top1 and Top3. Column and restriction aspects
require exact set / multiset equality.
"""

from __future__ import annotations

import io
import json
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path

from ..config import MatcherConfig
from ..errors import EmptyCorpus, EngineError
from ..profiling import TableProfile
from .matcher import match_question
from .plans import QueryPlan

ASPECTS = ("column", "intention", "restriction")


@dataclass
class CorpusRecord:
    question: str
    source: str
    gold_columns: list[str]
    gold_intention: str
    gold_restrictions: list[dict]
    tags: list[str] = field(default_factory=list)

    @classmethod
    def from_dict(cls, doc: dict) -> "CorpusRecord":
        return cls(
            question=doc["question"],
            source=doc["source"],
            gold_columns=list(doc.get("gold_columns", [])),
            gold_intention=doc["gold_intention"],
            gold_restrictions=list(doc.get("gold_restrictions", [])),
            tags=list(doc.get("tags", [])),
        )

    def restriction_multiset(self) -> Counter:
        return Counter(
            (r["kind"], None if r.get("operand") is None else float(r["operand"]))
            for r in self.gold_restrictions
        )


def load_corpus(path: str | Path) -> list[CorpusRecord]:
    records = []
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        line = line.strip()
        if line:
            records.append(CorpusRecord.from_dict(json.loads(line)))
    return records


def plan_hits(plan: QueryPlan, record: CorpusRecord) -> dict[str, bool]:
    return {
        "column": set(plan.mentioned_columns()) == set(record.gold_columns),
        "intention": plan.intention.value == record.gold_intention,
        "restriction": Counter(r.signature() for r in plan.restrictions)
        == record.restriction_multiset(),
    }


@dataclass
class AccuracyRow:
    source: str
    questions: int
    top1: dict[str, float]
    top3: dict[str, float]

    def to_dict(self) -> dict:
        out: dict = {"source": self.source, "questions": self.questions}
        for aspect in ASPECTS:
            out[f"{aspect}_top1"] = self.top1[aspect]
            out[f"{aspect}_top3"] = self.top3[aspect]
        return out


@dataclass
class AccuracyTable:
    rows: list[AccuracyRow]

    def to_csv(self) -> str:
        buf = io.StringIO()
        header = ["data_source"]
        for aspect in ASPECTS:
            header += [f"{aspect}_top1", f"{aspect}_top3"]
        buf.write(",".join(header) + "\n")
        for row in self.rows:
            cells = [row.source]
            for aspect in ASPECTS:
                cells.append(f"{row.top1[aspect]:.1f}")
                cells.append(f"{row.top3[aspect]:.1f}")
            buf.write(",".join(cells) + "\n")
        return buf.getvalue()


def evaluate_matcher(
    corpus: list[CorpusRecord],
    profiles_by_source: dict[str, TableProfile],
    config: MatcherConfig | None = None,
) -> AccuracyTable:
    """Run the matcher over a labeled corpus, grouped by data source."""
    if not corpus:
        raise EmptyCorpus("corpus has no records")

    grouped: dict[str, list[CorpusRecord]] = {}
    for record in corpus:
        grouped.setdefault(record.source, []).append(record)

    rows = []
    for source in sorted(grouped):
        records = grouped[source]
        profile = profiles_by_source.get(source)
        if profile is None:
            raise EngineError(f"no profile supplied for source {source!r}")
        top1 = {aspect: 0 for aspect in ASPECTS}
        top3 = {aspect: 0 for aspect in ASPECTS}
        for record in records:
            try:
                result = match_question(record.question, profile, config)
                candidates = result.candidates
            except EngineError:
                candidates = []
            for aspect in ASPECTS:
                if candidates and plan_hits(candidates[0], record)[aspect]:
                    top1[aspect] += 1
                if any(plan_hits(c, record)[aspect] for c in candidates[:3]):
                    top3[aspect] += 1
        n = len(records)
        rows.append(
            AccuracyRow(
                source=source,
                questions=n,
                top1={a: 100.0 * top1[a] / n for a in ASPECTS},
                top3={a: 100.0 * top3[a] / n for a in ASPECTS},
            )
        )
    return AccuracyTable(rows)
