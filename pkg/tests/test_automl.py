from __future__ import annotations

import numpy as np
import pytest

from tabq.automl import (
    Budget,
    Metric,
    ModelArtifact,
    TrainSpec,
    score,
    train,
    train_fixed,
    update_with_stream,
)
from tabq.dataset import load_table
from tabq.errors import (
    LengthMismatch,
    NonNumericTarget,
    SchemaMismatch,
    TooFewRows,
)
from tabq.profiling import build_profile


def table_from(xs, ys, extra=None):
    header = "x,y" if extra is None else "x,y,c"
    lines = [header]
    for i, (a, b) in enumerate(zip(xs, ys)):
        if extra is None:
            lines.append(f"{a:.8f},{b:.8f}")
        else:
            lines.append(f"{a:.8f},{b:.8f},{extra[i]}")
    ds = load_table("\n".join(lines).encode(), project_id="t")
    return ds, build_profile(ds)


# --- score ------------------------------------------------------------------


def test_score_zero_when_equal():
    p = np.arange(5.0)
    for metric in Metric:
        assert score(p, p, metric) == 0.0


def test_score_hand_arithmetic():
    assert score([0, 2], [1, 1], Metric.MAE) == pytest.approx(1.0)
    assert score([0, 2], [1, 1], Metric.MSE) == pytest.approx(1.0)
    assert score([0, 2], [1, 1], Metric.RMSE) == pytest.approx(1.0)


def test_rmse_squared_equals_mse():
    rng = np.random.default_rng(3)
    p, t = rng.normal(size=100), rng.normal(size=100)
    assert score(p, t, Metric.RMSE) ** 2 == pytest.approx(
        score(p, t, Metric.MSE), abs=1e-12
    )


def test_length_mismatch():
    with pytest.raises(LengthMismatch):
        score([1, 2], [1], Metric.MAE)


# --- train -------------------------------------------------------------------


def test_exact_linear_selects_ridge_zero():
    xs = np.linspace(0, 10, 100)
    ds, profile = table_from(xs, 3 * xs + 2)
    artifact = train(TrainSpec("t", "y"), ds, profile)
    assert artifact.algorithm == "linear_ridge"
    assert artifact.hyperparameters["lam"] == 0.0
    assert artifact.selected_score < 1e-6
    # normal-equation sanity: coefficients recovered
    preds = artifact.predict_rows([{"x": 1.0}, {"x": 2.0}])
    assert preds[0] == pytest.approx(5.0, abs=1e-6)
    assert preds[1] == pytest.approx(8.0, abs=1e-6)


def test_quadratic_prefers_nonlinear_learner():
    rng = np.random.default_rng(7)
    xs = rng.uniform(-3, 3, 300)
    ds, profile = table_from(xs, xs**2)
    artifact = train(TrainSpec("t", "y"), ds, profile)
    assert artifact.algorithm in ("knn_regressor", "regression_tree")

    # oracle: per-algorithm CV scores, nonlinear dominates ridge
    ridge = train_fixed(TrainSpec("t", "y"), ds, profile, "linear_ridge", {"lam": 0.0})
    knn = train_fixed(TrainSpec("t", "y"), ds, profile, "knn_regressor", {"k": 5})
    tree = train_fixed(TrainSpec("t", "y"), ds, profile,
                       "regression_tree", {"max_depth": 8, "min_leaf": 5})
    assert min(knn.selected_score, tree.selected_score) < ridge.selected_score


def test_too_few_rows():
    xs = np.arange(10.0)
    ds, profile = table_from(xs, xs)
    with pytest.raises(TooFewRows):
        train(TrainSpec("t", "y"), ds, profile)


def test_non_numeric_target():
    ds = load_table(b"x,y\n" + b"".join(f"{i},cat{i % 2}\n".encode() for i in range(30)))
    profile = build_profile(ds)
    with pytest.raises(NonNumericTarget):
        train(TrainSpec("t", "y"), ds, profile)


def test_selected_score_matches_fold_recomputation():
    rng = np.random.default_rng(8)
    xs = rng.uniform(0, 5, 150)
    ds, profile = table_from(xs, 2 * xs + rng.normal(0, 0.5, 150))
    artifact = train(TrainSpec("t", "y", metric=Metric.MAE), ds, profile)
    recomputed = [
        score(p, t, artifact.metric)
        for p, t in zip(artifact.fold_predictions, artifact.fold_truths)
    ]
    assert artifact.selected_score == pytest.approx(
        float(np.mean(recomputed)), abs=1e-9
    )
    assert artifact.cv_scores == pytest.approx(recomputed, abs=1e-9)


def test_training_deterministic():
    rng = np.random.default_rng(9)
    xs = rng.uniform(0, 5, 80)
    ys = np.sin(xs) + rng.normal(0, 0.1, 80)
    ds, profile = table_from(xs, ys)
    a = train(TrainSpec("t", "y", seed=5), ds, profile)
    b = train(TrainSpec("t", "y", seed=5), ds, profile)
    da, db = a.to_dict(), b.to_dict()
    da.pop("model_id"), db.pop("model_id")
    assert da == db


def test_categorical_features_one_hot_with_unknown_bucket():
    rng = np.random.default_rng(10)
    xs = rng.uniform(0, 5, 90)
    levels = ["a", "b", "c"]
    extra = [levels[i % 3] for i in range(90)]
    ys = xs + np.array([0.0, 5.0, 10.0])[np.arange(90) % 3]
    ds, profile = table_from(xs, ys, extra)
    artifact = train(TrainSpec("t", "y"), ds, profile)
    assert artifact.feature_encoding.categorical["c"] == ["a", "b", "c"]
    # unseen level routes through the unknown bucket instead of failing
    pred = artifact.predict_rows([{"x": 2.0, "c": "zzz"}])
    assert np.isfinite(pred[0])


def test_budget_tiers_change_grid():
    xs = np.linspace(0, 10, 60)
    ds, profile = table_from(xs, 3 * xs + 2)
    fast = train(TrainSpec("t", "y", budget=Budget.FAST), ds, profile)
    assert len(fast.cv_scores) == 3
    standard = train(TrainSpec("t", "y", budget=Budget.STANDARD), ds, profile)
    assert len(standard.cv_scores) == 5


def test_artifact_roundtrips_through_json():
    xs = np.linspace(0, 10, 60)
    ds, profile = table_from(xs, 3 * xs + 2)
    artifact = train(TrainSpec("t", "y"), ds, profile)
    clone = ModelArtifact.from_dict(artifact.to_dict())
    assert clone.to_dict() == artifact.to_dict()
    assert clone.predict_rows([{"x": 4.0}])[0] == pytest.approx(
        artifact.predict_rows([{"x": 4.0}])[0]
    )


# --- streaming updates ------------------------------------------------------------


def test_stream_zero_rows_identical():
    xs = np.linspace(0, 10, 60)
    ds, profile = table_from(xs, xs)
    artifact = train(TrainSpec("t", "y"), ds, profile)
    updated = update_with_stream(artifact, [], profile)
    assert updated.to_dict() == artifact.to_dict()


def test_stream_shifts_predictions_toward_new_data():
    xs = np.linspace(0, 10, 200)
    ds, profile = table_from(xs, xs)
    artifact = train(TrainSpec("t", "y"), ds, profile)
    before = float(artifact.predict_rows([{"x": 5.0}])[0])
    new_rows = [{"x": f"{v:.6f}", "y": f"{v + 5:.6f}"} for v in np.linspace(0, 10, 500)]
    updated = update_with_stream(artifact, new_rows, profile)
    after = float(updated.predict_rows([{"x": 5.0}])[0])
    assert after > before
    assert updated.rows_since_selection == 0  # >25% turnover forced re-selection


def test_stream_small_batch_keeps_selection():
    xs = np.linspace(0, 10, 200)
    ds, profile = table_from(xs, xs)
    artifact = train(TrainSpec("t", "y"), ds, profile)
    new_rows = [{"x": "11.0", "y": "11.0"}]
    updated = update_with_stream(artifact, new_rows, profile)
    assert updated.algorithm == artifact.algorithm
    assert updated.hyperparameters == artifact.hyperparameters
    assert updated.rows_since_selection == 1
    assert updated.train_row_count == 201


def test_stream_missing_target_rejected():
    xs = np.linspace(0, 10, 60)
    ds, profile = table_from(xs, xs)
    artifact = train(TrainSpec("t", "y"), ds, profile)
    with pytest.raises(SchemaMismatch):
        update_with_stream(artifact, [{"x": "1.0"}], profile)
    with pytest.raises(SchemaMismatch):
        update_with_stream(artifact, [{"y": "1.0"}], profile)
