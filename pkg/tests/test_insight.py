from __future__ import annotations

import math

import pytest

from tabq.analysis import execute
from tabq.errors import EmptyEvalSet, ProfileNotReady, TooFewColumns
from tabq.insight import (
    EvalCase,
    KnowledgeSnippet,
    KnowledgeStore,
    TemplateClient,
    explain_result,
    extract_numerals,
    fmt_num,
    generate_data_summary,
    generate_top_questions,
    numerals_traceable,
    optimize_prompt,
    summary_facts,
)
from tabq.matching import match_question
from tabq.profiling import ProfileStatus, TableProfile


# --- data summary ------------------------------------------------------------


def test_summary_mentions_columns_and_rows(factory_profile):
    text = generate_data_summary(factory_profile)
    assert "humidity" in text
    assert fmt_num(factory_profile.row_count) in text


def test_summary_requires_ready_profile():
    with pytest.raises(ProfileNotReady):
        generate_data_summary(TableProfile(status=ProfileStatus.PENDING))


def test_summary_names_planted_strongest_pair(factory_profile):
    # factory table plants a near-unit correlation humidity <-> electrical_test
    text = generate_data_summary(factory_profile)
    head = text.split("The strongest relationships are", 1)[1]
    first_pair = head.split(";")[0]
    assert "humidity" in first_pair and "electrical_test" in first_pair


def test_summary_deterministic_and_number_faithful(factory_profile):
    a = generate_data_summary(factory_profile)
    b = generate_data_summary(factory_profile)
    assert a == b
    assert numerals_traceable(a, summary_facts(factory_profile))


def test_paraphrase_keeps_numbers_or_falls_back(factory_profile):
    class DroppingClient:
        name = "dropper"
        deterministic = True

        def complete(self, prompt, params=None):
            return "All numbers were eaten."

    template_text = generate_data_summary(factory_profile)
    assert generate_data_summary(factory_profile, DroppingClient()) == template_text

    class KeepingClient:
        name = "keeper"
        deterministic = True

        def complete(self, prompt, params=None):
            payload = prompt.split(TemplateClient.MARKER, 1)[1]
            return "Paraphrased: " + payload

    out = generate_data_summary(factory_profile, KeepingClient())
    assert out.startswith("Paraphrased: ")


# --- top questions ---------------------------------------------------------------


def test_exactly_ten_unique_questions(factory_profile):
    questions = generate_top_questions(factory_profile, k=10)
    assert len(questions) == 10
    assert len({q.text for q in questions}) == 10


def test_questions_round_trip_through_matcher(factory_profile):
    for sq in generate_top_questions(factory_profile, k=10):
        top = match_question(sq.text, factory_profile).top
        assert top.intention == sq.intention, sq.text


def test_dominant_pair_gets_relationship_question(factory_profile):
    questions = generate_top_questions(factory_profile, k=10)
    texts = " | ".join(q.text for q in questions)
    assert "relate" in texts
    relationship = [q for q in questions if q.intention.value == "Relationship"][0]
    assert "humidity" in relationship.text and "electrical test" in relationship.text


def test_single_column_table_rejected():
    from tabq.dataset import load_table
    from tabq.profiling import build_profile

    profile = build_profile(load_table(b"x\n1\n2\n3\n"))
    with pytest.raises(TooFewColumns):
        generate_top_questions(profile)


# --- knowledge retrieval ------------------------------------------------------------


def make_store(n=100, seed_terms=("zephyr", "quark", "lattice", "osmium", "fjord")):
    snippets = [
        KnowledgeSnippet(f"s{i:03d}", f"common words about data tables row {i} column value")
        for i in range(n - 1)
    ]
    rare = KnowledgeSnippet("s999", " ".join(seed_terms) + " appears in exactly one snippet")
    return KnowledgeStore(snippets + [rare]), rare


def test_full_text_query_ranks_itself_first():
    store, rare = make_store()
    result = store.retrieve(rare.text, k=3)
    assert result.snippets[0].snippet_id == rare.snippet_id


def test_empty_store_flagged_not_error():
    result = KnowledgeStore([]).retrieve("anything")
    assert result.snippets == []
    assert result.store_empty


def test_rare_term_overlap_wins():
    store, rare = make_store()
    result = store.retrieve("zephyr quark lattice osmium fjord", k=3)
    assert result.snippets[0].snippet_id == "s999"

    # hand-check: idf-weighted overlap for the rare snippet exceeds any common one
    n = len(store.snippets)
    idf_rare = math.log((n + 1) / 2) + 1
    idf_common = math.log((n + 1) / n) + 1
    assert 5 * idf_rare > 3 * idf_common


def test_leading_five_tokens_retrieve_rank_one():
    store, _ = make_store()
    for snippet in store.snippets:
        lead = " ".join(snippet.text.split()[:5])
        result = store.retrieve(lead, k=3)
        ids = [s.snippet_id for s in result.snippets]
        # ties on generic leads still keep the snippet in the top ranks;
        # the unique-lead snippet must be rank 1
        if snippet.snippet_id == "s999":
            assert ids[0] == "s999"


def test_store_roundtrip(tmp_path):
    store, _ = make_store(n=5)
    path = tmp_path / "k.jsonl"
    store.save(path)
    loaded = KnowledgeStore.load(path)
    assert [s.snippet_id for s in loaded.snippets] == [s.snippet_id for s in store.snippets]


# --- explain -----------------------------------------------------------------------


def test_root_cause_explanation_names_top_factor(factory_dataset, factory_profile):
    plan = match_question(
        "what drives the difference between high and low electrical test", factory_profile
    ).top
    result = execute(plan, factory_dataset, factory_profile)
    text = explain_result(result)
    assert "humidity" in text
    assert fmt_num(result.finding("top_factor_score")) in text


def test_comparison_p_one_reads_no_significant_difference():
    from tabq.dataset import load_table
    from tabq.profiling import build_profile

    ds = load_table(b"g,v\nA,1\nA,2\nA,3\nB,1\nB,2\nB,3\n")
    profile = build_profile(ds)
    plan = match_question("compare v across g", profile).top
    result = execute(plan, ds, profile)
    assert "no significant difference" in explain_result(result)


def test_snippets_appended_without_numbers(factory_dataset, factory_profile):
    plan = match_question("what is the average humidity", factory_profile).top
    result = execute(plan, factory_dataset, factory_profile)
    clean = KnowledgeSnippet("a", "humidity matters for assembly yield")
    numeric = KnowledgeSnippet("b", "the answer is 42")
    text = explain_result(result, [clean, numeric])
    assert "Domain context" in text
    assert "humidity matters" in text
    assert "42" not in text
    no_context = explain_result(result, [])
    assert "Domain context" not in no_context


def test_explanations_number_faithful(factory_dataset, factory_profile):
    questions = [
        "what is the distribution of humidity",
        "is humidity normally distributed",
        "are there outliers in humidity",
        "how does humidity relate to electrical test",
        "what is the average humidity",
        "share of machine",
    ]
    for question in questions:
        plan = match_question(question, factory_profile).top
        result = execute(plan, factory_dataset, factory_profile)
        text = explain_result(result)
        facts = list(result.numeric_cells())
        assert numerals_traceable(text, facts), (question, text)


# --- prompt optimization ----------------------------------------------------------------


class ScriptedClient:
    """Echoes gold only when the prompt contains the magic token."""

    name = "scripted"
    deterministic = True

    def __init__(self, magic="magic"):
        self.magic = magic

    def complete(self, prompt, params=None):
        if self.magic in prompt:
            return prompt.rsplit("INPUT=", 1)[-1]
        return "wrong"


class ScriptedGenerator:
    name = "generator"
    deterministic = True

    def __init__(self, candidates):
        self.candidates = list(candidates)

    def complete(self, prompt, params=None):
        return self.candidates.pop(0)


def _eval_set():
    return [EvalCase(input="alpha", gold="alpha"), EvalCase(input="beta", gold="beta")]


def test_echo_client_accepted_first_try():
    client = ScriptedClient()
    outcome = optimize_prompt(
        "summary", _eval_set(), client, ScriptedGenerator([]),
        threshold=0.9, max_iters=3, initial_prompt="magic INPUT={input}",
    )
    assert len(outcome.records) == 1
    assert outcome.records[0].score == 1.0
    assert outcome.accepted


def test_always_wrong_exhausts_iterations():
    client = ScriptedClient(magic="never-present")
    generator = ScriptedGenerator(["try2 {input}", "try3 {input}", "try4 {input}"])
    outcome = optimize_prompt(
        "summary", _eval_set(), client, generator,
        threshold=0.9, max_iters=3, initial_prompt="try1 {input}",
    )
    assert len(outcome.records) == 3
    assert not outcome.accepted
    assert all(not r.accepted for r in outcome.records)


def test_second_candidate_triggers_acceptance():
    client = ScriptedClient()
    generator = ScriptedGenerator(["magic INPUT={input}"])
    outcome = optimize_prompt(
        "summary", _eval_set(), client, generator,
        threshold=0.9, max_iters=5, initial_prompt="plain INPUT={input}",
    )
    assert len(outcome.records) == 2
    assert outcome.accepted
    assert outcome.records[1].accepted
    assert outcome.best.candidate.generation == 1


def test_never_accepts_below_threshold():
    client = ScriptedClient(magic="no")
    generator = ScriptedGenerator(["a {input}", "b {input}", "c {input}", "d {input}"])
    outcome = optimize_prompt(
        "summary", _eval_set(), client, generator, threshold=0.5, max_iters=4,
        initial_prompt="z {input}",
    )
    for record in outcome.records:
        assert not (record.accepted and record.score < 0.5)


def test_empty_eval_set_rejected():
    with pytest.raises(EmptyEvalSet):
        optimize_prompt("summary", [], ScriptedClient(), ScriptedGenerator([]))


# --- numeral helpers -------------------------------------------------------------------


def test_fmt_num_canonical():
    assert fmt_num(3) == "3"
    assert fmt_num(3.0) == "3"
    assert fmt_num(0.8571428571) == "0.857143"
    assert fmt_num(True) == "1"


def test_extract_numerals():
    assert extract_numerals("p = 0.05 with 300 rows") == ["0.05", "300"]
