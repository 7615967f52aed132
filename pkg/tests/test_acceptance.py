"""Acceptance suite: one test per release criterion, each printing a
[PASS]/[FAIL] line. Tolerances are pinned here, not configurable."""

from __future__ import annotations

import json
import math
import time
from collections import Counter

import numpy as np

from tabq.analysis import execute, holt_forecast, jarque_bera, mad_outliers, root_cause
from tabq.automl import (
    Metric,
    SimulationRequest,
    TrainSpec,
    score,
    simulate,
    train,
    train_fixed,
    update_with_stream,
)
from tabq.dataset import load_table
from tabq.guidance import Consultant, SessionSettings
from tabq.insight import generate_top_questions
from tabq.matching import match_question, normalize, resolve_column_spans
from tabq.matching.evaluate import load_corpus, plan_hits
from tabq.matching.lexicon import INTENTION_PHRASES, phrase_occurrences
from tabq.matching.plans import RestrictionKind
from tabq.profiling import build_profile
from tabq.errors import EngineError

from conftest import CORPUS, SOURCES, report_criterion


# --- C1: matcher harness reproduces the accuracy-table shape and protocol ----------


def _unambiguous(record, profile) -> bool:
    """Single gold column, at most one restriction, single intention keyword."""
    if len(record.gold_columns) != 1 or len(record.gold_restrictions) > 1:
        return False
    try:
        tokens = normalize(record.question)
    except EngineError:
        return False
    spans = resolve_column_spans(tokens, profile)
    excluded = {i for m in spans for i in range(*m.span)}
    hits = phrase_occurrences(tokens, INTENTION_PHRASES, excluded)
    return len(hits) == 1


def test_c1_matcher_harness_shape_and_protocol(bundled_engine):
    started = time.monotonic()
    corpus = load_corpus(CORPUS)
    table = bundled_engine.evaluate(corpus, list(SOURCES))

    ok = len(table.rows) == 6
    for row in table.rows:
        ok = ok and row.questions == 30
        for aspect in ("column", "intention", "restriction"):
            ok = ok and row.top3[aspect] >= row.top1[aspect]

    hits = {"column": 0, "intention": 0, "restriction": 0}
    total = 0
    for record in corpus:
        profile = bundled_engine.ready_profile(record.source)
        if not _unambiguous(record, profile):
            continue
        total += 1
        try:
            top = match_question(record.question, profile).top
        except EngineError:
            continue
        for aspect, hit in plan_hits(top, record).items():
            hits[aspect] += bool(hit)
    subset_ok = total > 0 and all(hits[a] / total >= 0.90 for a in hits)
    elapsed = time.monotonic() - started
    ok = ok and subset_ok and elapsed < 10.0

    report_criterion(
        "C1 matcher harness (6x6 table, Top3>=Top1, unambiguous Top1>=0.90, <10s)",
        ok,
        f"{total} unambiguous, "
        + ", ".join(f"{a}={hits[a] / total:.3f}" for a in hits)
        + f", {elapsed:.1f}s",
    )
    assert ok


# --- C2: restriction vocabulary completeness -----------------------------------------


def test_c2_restriction_vocabulary_golden(bundled_engine):
    corpus = load_corpus(CORPUS)
    parsed_per_kind: Counter = Counter()
    top_ten_seen = False
    ok = True
    for record in corpus:
        kinds_tagged = [t.split(":", 1)[1] for t in record.tags if t.startswith("restriction:")]
        if not kinds_tagged:
            continue
        profile = bundled_engine.ready_profile(record.source)
        top = match_question(record.question, profile).top
        got = Counter(r.signature() for r in top.restrictions)
        if got != record.restriction_multiset():
            ok = False
            continue
        for kind in set(kinds_tagged):
            parsed_per_kind[kind] += 1
        if ("Top", 10.0) in got and "top ten" in record.question.lower():
            top_ten_seen = True

    for kind in RestrictionKind:
        if parsed_per_kind[kind.value] < 3:
            ok = False
    ok = ok and top_ten_seen
    report_criterion(
        "C2 restriction vocabulary (14 kinds x >=3 golden parses, 'top ten' -> Top(10))",
        ok,
        ", ".join(f"{k.value}:{parsed_per_kind[k.value]}" for k in RestrictionKind),
    )
    assert ok


# --- C3: statistics oracle over randomized tables -------------------------------------


def _brute_profile_stats(cells):
    values = sorted(float(c) for c in cells if c is not None)
    n = len(values)
    mean = sum(values) / n
    var = sum((v - mean) ** 2 for v in values) / (n - 1) if n > 1 else 0.0

    def quantile(q):
        pos = q * (n - 1)
        lo = math.floor(pos)
        hi = math.ceil(pos)
        return values[lo] + (values[hi] - values[lo]) * (pos - lo)

    return mean, math.sqrt(var), values[0], values[-1], quantile(0.25), quantile(0.5), quantile(0.75)


def _brute_pearson(a_cells, b_cells):
    pairs = [(float(a), float(b)) for a, b in zip(a_cells, b_cells)
             if a is not None and b is not None]
    n = len(pairs)
    if n < 2:
        return None
    ma = sum(a for a, _ in pairs) / n
    mb = sum(b for _, b in pairs) / n
    saa = sum((a - ma) ** 2 for a, _ in pairs)
    sbb = sum((b - mb) ** 2 for _, b in pairs)
    sab = sum((a - ma) * (b - mb) for a, b in pairs)
    if saa == 0.0 or sbb == 0.0:
        return None
    return sab / math.sqrt(saa * sbb)


def test_c3_statistics_oracle_50_random_tables():
    rng = np.random.default_rng(1234)
    worst = 0.0
    ok = True
    for _ in range(50):
        n = int(rng.integers(30, 1001))
        k = int(rng.integers(2, 6))
        header = [f"n{j}" for j in range(k)]
        columns = []
        for j in range(k):
            scale = float(rng.uniform(0.5, 100))
            base = rng.normal(rng.uniform(-10, 10), scale, n)
            cells = [f"{v:.8f}" for v in base]
            miss = rng.random(n) < rng.uniform(0, 0.15)
            columns.append([None if miss[i] else cells[i] for i in range(n)])
        csv_lines = [",".join(header)]
        for i in range(n):
            csv_lines.append(",".join(c[i] if c[i] is not None else "" for c in columns))
        ds = load_table("\n".join(csv_lines).encode())
        profile = build_profile(ds)

        for j, name in enumerate(header):
            stats = profile.profile(name).numeric_stats
            mean, std, lo, hi, q1, med, q3 = _brute_profile_stats(columns[j])
            for got, ref in [(stats.mean, mean), (stats.sample_std, std),
                             (stats.min, lo), (stats.max, hi),
                             (stats.q1, q1), (stats.median, med), (stats.q3, q3)]:
                delta = abs(got - ref)
                worst = max(worst, delta)
                if delta > 1e-9:
                    ok = False

        for a in range(k):
            for b in range(a + 1, k):
                got = profile.correlation.get(header[a], header[b])
                ref = _brute_pearson(columns[a], columns[b])
                if (got is None) != (ref is None):
                    ok = False
                elif got is not None:
                    delta = abs(got - ref)
                    worst = max(worst, delta)
                    if delta > 1e-9:
                        ok = False

    report_criterion("C3 statistics oracle (50 random tables, entrywise 1e-9)",
                     ok, f"worst delta {worst:.2e}")
    assert ok


# --- C4: root-cause planted-factor recovery -----------------------------------------


def test_c4_root_cause_planted_recovery():
    started = time.monotonic()
    recovered = 0
    trials = 20
    for seed in range(trials):
        rng = np.random.default_rng(1000 + seed)
        n = 500
        target = rng.normal(10, 2, n)
        planted = target + rng.normal(0, 0.01, n)
        decoys = rng.normal(0, 1, size=(n, 9))
        header = ["target", "planted"] + [f"decoy_{i}" for i in range(9)]
        lines = [",".join(header)]
        for i in range(n):
            row = [f"{target[i]:.6f}", f"{planted[i]:.6f}"]
            row += [f"{v:.6f}" for v in decoys[i]]
            lines.append(",".join(row))
        ds = load_table("\n".join(lines).encode())
        profile = build_profile(ds)
        result = root_cause(ds, "target", profile)
        if result.factors[0].column == "planted":
            recovered += 1
    elapsed = time.monotonic() - started
    ok = recovered >= 19 and elapsed < 30.0
    report_criterion("C4 planted-driver recovery (>=19/20 rank first, <30s)",
                     ok, f"{recovered}/20 in {elapsed:.1f}s")
    assert ok


# --- C5: normality / anomaly / forecast property suite ---------------------------------


def test_c5_normality_anomaly_forecast_properties():
    gauss_pass = 0
    for seed in range(100):
        rng = np.random.default_rng(seed)
        result = jarque_bera(rng.normal(size=500))
        gauss_pass += result.verdict == "consistent with normal"

    expo_reject = 0
    for seed in range(100):
        rng = np.random.default_rng(3000 + seed)
        result = jarque_bera(rng.exponential(1.0, 500))
        expo_reject += result.verdict == "not consistent with normal"

    rng = np.random.default_rng(2)
    values = rng.normal(0, 1, 1000)
    planted = [50, 250, 500, 750, 950]
    for i, sign in zip(planted, [1, -1, 1, -1, 1]):
        values[i] = sign * 10.0
    outliers = mad_outliers(values)
    outliers_ok = outliers.indices == planted

    t = np.arange(40, dtype=float)
    holt = holt_forecast(t, 2.0 * t, horizon=5)
    holt_ok = all(
        abs(p - 2.0 * (39 + h)) < 1e-6 for h, p in enumerate(holt.predictions, start=1)
    )

    ok = gauss_pass >= 93 and expo_reject >= 99 and outliers_ok and holt_ok
    report_criterion(
        "C5 normality/anomaly/forecast (JB>=93/100, exp>=99/100, outliers exact, Holt 1e-6)",
        ok,
        f"gauss {gauss_pass}/100, expo {expo_reject}/100, "
        f"outliers {'exact' if outliers_ok else 'MISSED'}, holt {'exact' if holt_ok else 'off'}",
    )
    assert ok


# --- C6: AutoML cycle ----------------------------------------------------------------------


def test_c6_automl_cycle():
    started = time.monotonic()

    xs = np.linspace(0, 10, 100)
    lines = ["x,y"] + [f"{x:.8f},{3 * x + 2:.8f}" for x in xs]
    ds = load_table("\n".join(lines).encode(), project_id="lin")
    profile = build_profile(ds)
    artifact = train(TrainSpec("lin", "y"), ds, profile)
    ridge_ok = (
        artifact.algorithm == "linear_ridge"
        and artifact.hyperparameters["lam"] == 0.0
        and artifact.selected_score < 1e-6
    )

    rng = np.random.default_rng(77)
    p, t = rng.normal(size=100), rng.normal(size=100)
    identity_ok = abs(score(p, t, Metric.RMSE) ** 2 - score(p, t, Metric.MSE)) < 1e-12

    rng = np.random.default_rng(5)
    qx = rng.uniform(0, 6, 2000)
    qlines = ["x,y"] + [f"{x:.6f},{-(x - 3) ** 2 + 10:.6f}" for x in qx]
    qds = load_table("\n".join(qlines).encode(), project_id="quad")
    qprofile = build_profile(qds)
    tree = train_fixed(TrainSpec("quad", "y"), qds, qprofile,
                       "regression_tree", {"max_depth": 8, "min_leaf": 5})
    sim = simulate(tree, SimulationRequest(ranges={"x": (0.0, 6.0)}, objective="maximize"))
    grid = np.arange(0.0, 6.005, 0.01)
    preds = np.asarray(tree.predict_rows([{"x": float(g)} for g in grid]))
    best_value = float(np.max(preds))
    oracle_x = float(np.mean(grid[preds == best_value]))
    sim_ok = abs(sim.best_configuration["x"] - oracle_x) < 0.2

    sx = np.linspace(0, 10, 200)
    slines = ["x,y"] + [f"{x:.6f},{x:.6f}" for x in sx]
    sds = load_table("\n".join(slines).encode(), project_id="s")
    sprofile = build_profile(sds)
    base = train(TrainSpec("s", "y"), sds, sprofile)
    before = float(base.predict_rows([{"x": 5.0}])[0])
    stream_rows = [{"x": f"{v:.6f}", "y": f"{v + 5:.6f}"} for v in np.linspace(0, 10, 500)]
    updated = update_with_stream(base, stream_rows, sprofile)
    after = float(updated.predict_rows([{"x": 5.0}])[0])
    stream_ok = after > before

    elapsed = time.monotonic() - started
    ok = ridge_ok and identity_ok and sim_ok and stream_ok and elapsed < 60.0
    report_criterion(
        "C6 AutoML cycle (ridge exact, RMSE^2=MSE, simulate within 0.2, stream shift, <60s)",
        ok,
        f"ridge={ridge_ok}, identity={identity_ok}, sim |dx|="
        f"{abs(sim.best_configuration['x'] - oracle_x):.3f}, "
        f"stream {before:.2f}->{after:.2f}, {elapsed:.1f}s",
    )
    assert ok


# --- C7: insight determinism and numeral fidelity ---------------------------------------


def test_c7_insight_determinism_and_fidelity(bundled_engine):
    from tabq.insight import extract_numerals, fmt_num, generate_data_summary, summary_facts

    ok = True
    for source in SOURCES:
        profile = bundled_engine.ready_profile(source)
        a = generate_data_summary(profile)
        b = generate_data_summary(profile)
        ok = ok and a == b
        rendered = {fmt_num(v) for v in summary_facts(profile)}
        rendered |= {fmt_num(abs(v)) for v in summary_facts(profile)}
        ok = ok and all(numeral in rendered for numeral in extract_numerals(a))

        questions = generate_top_questions(profile, k=10)
        ok = ok and len({q.text for q in questions}) == 10
        for sq in questions:
            top = match_question(sq.text, profile).top
            ok = ok and top.intention == sq.intention

        dataset = bundled_engine.dataset(source)
        for sq in questions[:4]:
            result = execute(sq.plan, dataset, profile)
            from tabq.insight import explain_result, numerals_traceable

            text = explain_result(result)
            ok = ok and numerals_traceable(text, list(result.numeric_cells()))

    report_criterion(
        "C7 insight determinism + numeral fidelity + question round-trip", ok
    )
    assert ok


# --- C8: end-to-end session replay + service contract -------------------------------------


def _run_scripted_session(engine, project_id):
    dataset = engine.dataset(project_id)
    profile = engine.ready_profile(project_id)
    consultant = Consultant(dataset, profile)
    settings = SessionSettings(
        description="factory floor data", role="quality",
        goal="raise electrical yield", target_column="electrical_test",
    )
    session, first = consultant.start_session(settings)
    session.session_id = "scripted"  # deterministic replay identity
    consultant.step(session, first)
    consultant.step(
        session, "what drives the difference between high and low electrical test"
    )
    consultant.step(session, "how does electrical test relate to humidity")
    report = consultant.summarize(session)
    return report


def test_c8_end_to_end_replay_and_service_contract(tmp_path):
    from fastapi.testclient import TestClient

    from tabq.engine import Engine
    from tabq.service import ServiceConfig, create_app

    from conftest import TABLES

    payload = TABLES.joinpath("manufacture.csv").read_bytes()

    engine_a = Engine(tmp_path / "a")
    pid_a, job_a = engine_a.create_project(payload, name="m", project_id="m")
    engine_a.wait_for_job(job_a.job_id)
    report_a = _run_scripted_session(engine_a, pid_a)

    engine_b = Engine(tmp_path / "b")
    pid_b, job_b = engine_b.create_project(payload, name="m", project_id="m")
    engine_b.wait_for_job(job_b.job_id)
    report_b = _run_scripted_session(engine_b, pid_b)

    replay_ok = (
        json.dumps(report_a.to_dict(), sort_keys=True)
        == json.dumps(report_b.to_dict(), sort_keys=True)
        and report_a.to_markdown() == report_b.to_markdown()
    )

    config = ServiceConfig(data_dir=str(tmp_path / "svc"))
    client = TestClient(create_app(config))
    checks = []

    created = client.post("/projects", files={"file": ("m.csv", payload, "text/csv")})
    checks.append(created.status_code == 201)
    pid = created.json()["project_id"]
    job_id = created.json()["job_id"]
    while client.get(f"/jobs/{job_id}").json()["status"] not in ("Done", "Failed"):
        time.sleep(0.05)
    checks.append(client.get(f"/projects/{pid}/profile").json()["status"] == "Ready")
    checks.append(client.get(f"/projects/{pid}/insight").status_code == 200)
    query = client.post(f"/projects/{pid}/query", json={
        "question": "What is the difference between high electrical test and low electrical test",
    })
    checks.append(query.status_code == 200)
    checks.append(query.json()["match"]["candidates"][0]["intention"] == "RootCause")

    session = client.post("/sessions", json={
        "project_id": pid, "target_column": "electrical_test", "role": "quality",
    })
    checks.append(session.status_code == 201)
    sid = session.json()["session_id"]
    checks.append(client.post(f"/sessions/{sid}/step", json={"pick": 0}).status_code == 200)
    summary = client.post(f"/sessions/{sid}/summary")
    checks.append(summary.status_code == 200)
    rid = summary.json()["report_id"]
    checks.append(client.get(f"/reports/{rid}").status_code == 200)
    markdown = client.get(f"/reports/{rid}", headers={"accept": "text/markdown"})
    checks.append(markdown.headers["content-type"].startswith("text/markdown"))

    train_resp = client.post(f"/projects/{pid}/models", json={
        "target": "electrical_test", "budget": "fast",
    })
    checks.append(train_resp.status_code == 202)
    tjob = train_resp.json()["job_id"]
    while client.get(f"/jobs/{tjob}").json()["status"] not in ("Done", "Failed"):
        time.sleep(0.05)
    model_id = client.get(f"/jobs/{tjob}").json().get("result")
    checks.append(client.get(f"/models/{model_id}").status_code == 200)
    sim = client.post(f"/models/{model_id}/simulate",
                      json={"ranges": {"humidity": [40, 60]}, "budget": 50})
    checks.append(sim.status_code == 200)
    checks.append(client.post(f"/models/{model_id}/stream", json={"rows": []}).status_code == 200)

    # error-code sweep
    error_cases = [
        (client.post("/projects/ghost/query", json={"question": "x"}), 404, "UNKNOWN_PROJECT"),
        (client.post(f"/projects/{pid}/query", json={"question": "hello"}), 422, "NO_SIGNAL"),
        (client.post(f"/projects/{pid}/query", json={"question": " "}), 400, "EMPTY_QUESTION"),
        (client.get("/models/ghost"), 404, "UNKNOWN_MODEL"),
        (client.get("/reports/ghost"), 404, "UNKNOWN_REPORT"),
        (client.post("/sessions/ghost/step", json={"question": "x"}), 404, "UNKNOWN_SESSION"),
        (client.post("/sessions", json={"project_id": pid, "target_column": "nope"}),
         404, "UNKNOWN_TARGET"),
        (client.post(f"/models/{model_id}/simulate",
                     json={"ranges": {"humidity": [9, 1]}}), 400, "EMPTY_RANGE"),
        (client.post(f"/sessions/{sid}/step", json={"pick": 0}), 409, "SESSION_CLOSED"),
    ]
    for response, status, code in error_cases:
        checks.append(response.status_code == status and response.json()["code"] == code)

    service_ok = all(checks)
    ok = replay_ok and service_ok
    report_criterion(
        "C8 end-to-end replay byte-identical + service contract with error codes",
        ok,
        f"replay={'identical' if replay_ok else 'DIVERGED'}, "
        f"service {sum(checks)}/{len(checks)} checks",
    )
    assert ok
