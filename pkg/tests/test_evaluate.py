from __future__ import annotations

import pytest

from tabq.errors import EmptyCorpus
from tabq.matching.evaluate import CorpusRecord, evaluate_matcher, load_corpus

from conftest import CORPUS, SOURCES


def _record(question, source, cols, intention, restrictions=()):
    return CorpusRecord(
        question=question,
        source=source,
        gold_columns=cols,
        gold_intention=intention,
        gold_restrictions=[{"kind": k, "operand": op} for k, op in restrictions],
    )


def test_single_perfect_question_scores_100(factory_profile):
    corpus = [_record("What is the average humidity?", "f", ["humidity"],
                      "Aggregation", [("Average", None)])]
    table = evaluate_matcher(corpus, {"f": factory_profile})
    row = table.rows[0]
    assert row.questions == 1
    for aspect in ("column", "intention", "restriction"):
        assert row.top1[aspect] == 100.0
        assert row.top3[aspect] == 100.0


def test_adversarial_corpus_scores_zero_intention(factory_profile):
    # gold intention never appears in any lexicon
    corpus = [
        _record("show humidity", "f", ["humidity"], "Forecast"),
        _record("show temperature", "f", ["temperature"], "RootCause"),
    ]
    table = evaluate_matcher(corpus, {"f": factory_profile})
    assert table.rows[0].top1["intention"] == 0.0


def test_empty_corpus_rejected(factory_profile):
    with pytest.raises(EmptyCorpus):
        evaluate_matcher([], {"f": factory_profile})


def test_bundled_corpus_shape():
    corpus = load_corpus(CORPUS)
    assert len(corpus) == 180
    by_source = {}
    for record in corpus:
        by_source.setdefault(record.source, []).append(record)
    assert sorted(by_source) == sorted(SOURCES)
    assert all(len(records) == 30 for records in by_source.values())


def test_corpus_restriction_coverage():
    """Every restriction kind is exercised by at least 3 tagged questions."""
    corpus = load_corpus(CORPUS)
    counts = {}
    for record in corpus:
        for tag in record.tags:
            if tag.startswith("restriction:"):
                counts[tag.split(":", 1)[1]] = counts.get(tag.split(":", 1)[1], 0) + 1
    from tabq.matching.plans import RestrictionKind

    for kind in RestrictionKind:
        assert counts.get(kind.value, 0) >= 3, f"{kind.value} covered {counts.get(kind.value, 0)}x"


def test_evaluation_csv_layout(bundled_engine):
    corpus = load_corpus(CORPUS)
    table = bundled_engine.evaluate(corpus, list(SOURCES))
    csv_text = table.to_csv()
    lines = csv_text.strip().splitlines()
    assert lines[0].split(",") == [
        "data_source",
        "column_top1", "column_top3",
        "intention_top1", "intention_top3",
        "restriction_top1", "restriction_top3",
    ]
    assert len(lines) == 1 + 6
    for line in lines[1:]:
        cells = line.split(",")
        assert len(cells) == 7
        for cell in cells[1:]:
            value = float(cell)
            assert 0.0 <= value <= 100.0


def test_golden_restriction_parses(bundled_engine):
    """Tagged corpus questions parse to exactly the gold kind+operand."""
    from tabq.matching import match_question
    from collections import Counter

    corpus = load_corpus(CORPUS)
    checked = 0
    for record in corpus:
        if not any(t.startswith("restriction:") for t in record.tags):
            continue
        profile = bundled_engine.ready_profile(record.source)
        result = match_question(record.question, profile)
        got = Counter(r.signature() for r in result.top.restrictions)
        assert got == record.restriction_multiset(), record.question
        checked += 1
    assert checked >= 3 * 14
