"""Cross-validated model selection and streaming refits."""

from __future__ import annotations

import uuid
from dataclasses import dataclass
from enum import Enum

import numpy as np

from ..config import AutomlConfig
from ..dataset import Dataset
from ..errors import (
    AllFeaturesConstant,
    NonNumericTarget,
    SchemaMismatch,
    TooFewRows,
)
from ..profiling import ColumnType, TableProfile, parse_number
from .encoding import FeatureEncoding, build_encoding, complete_rows, design_matrix, fit_levels
from .learners import build_learner, load_learner
from .metrics import Metric, score


class Budget(str, Enum):
    FAST = "fast"
    STANDARD = "standard"
    THOROUGH = "thorough"


# budget -> (cv folds, ridge lambdas, knn ks, tree depths)
_BUDGETS = {
    Budget.FAST: (3, [0.0, 1.0], [5], [5]),
    Budget.STANDARD: (5, [0.0, 0.1, 1.0, 10.0], [3, 5, 10], [3, 5, 8]),
    Budget.THOROUGH: (5, [0.0, 0.01, 0.1, 1.0, 10.0, 100.0], [1, 3, 5, 10, 20], [3, 5, 8, 12]),
}


@dataclass
class TrainSpec:
    project_id: str
    target: str
    metric: Metric = Metric.RMSE
    budget: Budget = Budget.STANDARD
    features: list[str] | None = None  # default: all non-target, non-text columns
    seed: int = 7

    def to_dict(self) -> dict:
        return {
            "project_id": self.project_id,
            "target": self.target,
            "metric": self.metric.value,
            "budget": self.budget.value,
            "features": self.features,
            "seed": self.seed,
        }

    @classmethod
    def from_dict(cls, doc: dict) -> "TrainSpec":
        return cls(
            project_id=doc["project_id"],
            target=doc["target"],
            metric=Metric(doc.get("metric", "RMSE")),
            budget=Budget(doc.get("budget", "standard")),
            features=doc.get("features"),
            seed=doc.get("seed", 7),
        )


@dataclass
class ModelArtifact:
    model_id: str
    project_id: str
    target: str
    metric: Metric
    budget: Budget
    algorithm: str
    hyperparameters: dict
    cv_scores: list[float]
    selected_score: float
    feature_encoding: FeatureEncoding
    train_row_count: int
    params: dict
    window_rows: list[dict]
    feature_ranges: dict[str, list]       # numeric/datetime -> [lo, hi]; categorical -> levels
    fold_predictions: list[list[float]]
    fold_truths: list[list[float]]
    seed: int = 7
    rows_since_selection: int = 0
    extrapolation_note: str = ""

    def learner(self):
        return load_learner(self.algorithm, self.params)

    def predict_rows(self, rows: list[dict]) -> np.ndarray:
        X = np.asarray([self.feature_encoding.encode_row(r) for r in rows], dtype=float)
        return self.learner().predict(X)

    def to_dict(self) -> dict:
        return {
            "schema": "model/v1",
            "model_id": self.model_id,
            "project_id": self.project_id,
            "target": self.target,
            "metric": self.metric.value,
            "budget": self.budget.value,
            "algorithm": self.algorithm,
            "hyperparameters": self.hyperparameters,
            "cv_scores": self.cv_scores,
            "selected_score": self.selected_score,
            "feature_encoding": self.feature_encoding.to_dict(),
            "train_row_count": self.train_row_count,
            "params": self.params,
            "window_rows": self.window_rows,
            "feature_ranges": self.feature_ranges,
            "fold_predictions": self.fold_predictions,
            "fold_truths": self.fold_truths,
            "seed": self.seed,
            "rows_since_selection": self.rows_since_selection,
        }

    @classmethod
    def from_dict(cls, doc: dict) -> "ModelArtifact":
        return cls(
            model_id=doc["model_id"],
            project_id=doc["project_id"],
            target=doc["target"],
            metric=Metric(doc["metric"]),
            budget=Budget(doc["budget"]),
            algorithm=doc["algorithm"],
            hyperparameters=doc["hyperparameters"],
            cv_scores=list(doc["cv_scores"]),
            selected_score=doc["selected_score"],
            feature_encoding=FeatureEncoding.from_dict(doc["feature_encoding"]),
            train_row_count=doc["train_row_count"],
            params=doc["params"],
            window_rows=list(doc["window_rows"]),
            feature_ranges={k: list(v) for k, v in doc["feature_ranges"].items()},
            fold_predictions=[list(p) for p in doc["fold_predictions"]],
            fold_truths=[list(t) for t in doc["fold_truths"]],
            seed=doc.get("seed", 7),
            rows_since_selection=doc.get("rows_since_selection", 0),
        )


def _zoo(budget: Budget) -> list[tuple[str, dict]]:
    _, lambdas, ks, depths = _BUDGETS[budget]
    configs: list[tuple[str, dict]] = []
    configs += [("linear_ridge", {"lam": lam}) for lam in lambdas]
    configs += [("knn_regressor", {"k": k}) for k in ks]
    configs += [("regression_tree", {"max_depth": d, "min_leaf": 5}) for d in depths]
    return configs


def _cv_folds(n: int, k: int, seed: int) -> list[np.ndarray]:
    rng = np.random.default_rng(seed)
    return [np.sort(fold) for fold in np.array_split(rng.permutation(n), k)]


def _cross_validate(
    X: np.ndarray, y: np.ndarray, algorithm: str, hyper: dict,
    folds: list[np.ndarray], metric: Metric,
) -> tuple[list[float], list[list[float]], list[list[float]]]:
    scores, preds_out, truths_out = [], [], []
    all_idx = np.arange(y.size)
    for fold in folds:
        mask = np.isin(all_idx, fold)
        learner = build_learner(algorithm, hyper)
        learner.fit(X[~mask], y[~mask])
        preds = learner.predict(X[mask])
        scores.append(score(preds, y[mask], metric))
        preds_out.append([float(p) for p in preds])
        truths_out.append([float(t) for t in y[mask]])
    return scores, preds_out, truths_out


def _feature_ranges(encoding: FeatureEncoding, rows: list[dict]) -> dict[str, list]:
    ranges: dict[str, list] = {}
    for column in encoding.numeric + encoding.datetime:
        values = [encoding.encode_value(column, row[column])[0] for row in rows]
        ranges[column] = [min(values), max(values)]
    for column, levels in encoding.categorical.items():
        ranges[column] = list(levels)
    return ranges


def train(
    spec: TrainSpec,
    dataset: Dataset,
    profiles: TableProfile,
    config: AutomlConfig | None = None,
) -> ModelArtifact:
    """Select the best (algorithm, hyperparameters) by mean CV metric.

    The zoo is scanned in a fixed order and ties keep the earlier entry, so
    training is fully deterministic for a given seed.
    """
    config = config or AutomlConfig()
    target_profile = profiles.profile(spec.target)
    if target_profile.ctype != ColumnType.NUMERIC:
        raise NonNumericTarget(f"target {spec.target!r} is not numeric")

    if spec.features is None:
        features = [
            p.name
            for p in profiles.column_profiles
            if p.name != spec.target and p.ctype != ColumnType.TEXT
        ]
    else:
        features = [f for f in spec.features if f != spec.target]

    encoding = build_encoding(profiles, features)
    rows = complete_rows(dataset, spec.target, encoding)
    if len(rows) < config.min_rows:
        raise TooFewRows(
            f"training needs at least {config.min_rows} complete rows, got {len(rows)}"
        )
    fit_levels(encoding, rows)
    X, y = design_matrix(encoding, rows, spec.target)
    if X.shape[1] == 0 or bool(np.all(X == X[0, :], axis=None)):
        raise AllFeaturesConstant("no varying feature columns after encoding")

    folds_k = _BUDGETS[spec.budget][0]
    folds = _cv_folds(y.size, folds_k, spec.seed)

    best = None
    for algorithm, hyper in _zoo(spec.budget):
        scores, preds, truths = _cross_validate(X, y, algorithm, hyper, folds, spec.metric)
        mean_score = float(np.mean(scores))
        if best is None or mean_score < best[0] - 1e-12:
            best = (mean_score, algorithm, hyper, scores, preds, truths)

    mean_score, algorithm, hyper, scores, preds, truths = best
    final = build_learner(algorithm, hyper).fit(X, y)

    return ModelArtifact(
        model_id=uuid.uuid4().hex,
        project_id=spec.project_id,
        target=spec.target,
        metric=spec.metric,
        budget=spec.budget,
        algorithm=algorithm,
        hyperparameters=hyper,
        cv_scores=[float(s) for s in scores],
        selected_score=mean_score,
        feature_encoding=encoding,
        train_row_count=len(rows),
        params=final.params_dict(),
        window_rows=rows,
        feature_ranges=_feature_ranges(encoding, rows),
        fold_predictions=preds,
        fold_truths=truths,
        seed=spec.seed,
    )


def train_fixed(
    spec: TrainSpec,
    dataset: Dataset,
    profiles: TableProfile,
    algorithm: str,
    hyperparameters: dict,
    config: AutomlConfig | None = None,
) -> ModelArtifact:
    """Train one named configuration, skipping zoo selection."""
    config = config or AutomlConfig()
    if profiles.profile(spec.target).ctype != ColumnType.NUMERIC:
        raise NonNumericTarget(f"target {spec.target!r} is not numeric")
    features = spec.features or [
        p.name
        for p in profiles.column_profiles
        if p.name != spec.target and p.ctype != ColumnType.TEXT
    ]
    encoding = build_encoding(profiles, [f for f in features if f != spec.target])
    rows = complete_rows(dataset, spec.target, encoding)
    if len(rows) < config.min_rows:
        raise TooFewRows(
            f"training needs at least {config.min_rows} complete rows, got {len(rows)}"
        )
    fit_levels(encoding, rows)
    X, y = design_matrix(encoding, rows, spec.target)
    folds = _cv_folds(y.size, _BUDGETS[spec.budget][0], spec.seed)
    scores, preds, truths = _cross_validate(X, y, algorithm, hyperparameters, folds, spec.metric)
    final = build_learner(algorithm, hyperparameters).fit(X, y)
    return ModelArtifact(
        model_id=uuid.uuid4().hex,
        project_id=spec.project_id,
        target=spec.target,
        metric=spec.metric,
        budget=spec.budget,
        algorithm=algorithm,
        hyperparameters=hyperparameters,
        cv_scores=[float(s) for s in scores],
        selected_score=float(np.mean(scores)),
        feature_encoding=encoding,
        train_row_count=len(rows),
        params=final.params_dict(),
        window_rows=rows,
        feature_ranges=_feature_ranges(encoding, rows),
        fold_predictions=preds,
        fold_truths=truths,
        seed=spec.seed,
    )


def _validate_rows(artifact: ModelArtifact, new_rows: list[dict]) -> list[dict]:
    cleaned = []
    for row in new_rows:
        if artifact.target not in row or row[artifact.target] is None:
            raise SchemaMismatch(f"row is missing target {artifact.target!r}")
        if parse_number(str(row[artifact.target])) is None:
            raise SchemaMismatch(f"target value {row[artifact.target]!r} is not numeric")
        encoded_cols = artifact.feature_encoding.columns()
        for column in encoded_cols:
            if column not in row or row[column] is None:
                raise SchemaMismatch(f"row is missing feature {column!r}")
        cleaned.append({c: str(row[c]) for c in encoded_cols + [artifact.target]})
    return cleaned


def update_with_stream(
    artifact: ModelArtifact,
    new_rows: list[dict],
    profiles: TableProfile,
    config: AutomlConfig | None = None,
) -> ModelArtifact:
    """Append rows to the bounded window and refit.

    The previously selected algorithm and hyperparameters are kept unless
    the window composition changed by more than the reselect fraction since
    the last full selection, in which case the whole zoo is re-scanned.
    """
    config = config or AutomlConfig()
    cleaned = _validate_rows(artifact, new_rows)
    window = (artifact.window_rows + cleaned)[-config.stream_window:]
    accumulated = artifact.rows_since_selection + len(cleaned)
    reselect = accumulated / max(1, len(window)) > config.reselect_fraction

    encoding = FeatureEncoding.from_dict(artifact.feature_encoding.to_dict())
    fit_levels(encoding, window)
    X, y = design_matrix(encoding, window, artifact.target)

    folds_k = _BUDGETS[artifact.budget][0]
    folds = _cv_folds(y.size, folds_k, artifact.seed)

    if reselect:
        best = None
        for algorithm, hyper in _zoo(artifact.budget):
            scores, preds, truths = _cross_validate(
                X, y, algorithm, hyper, folds, artifact.metric
            )
            mean_score = float(np.mean(scores))
            if best is None or mean_score < best[0] - 1e-12:
                best = (mean_score, algorithm, hyper, scores, preds, truths)
        mean_score, algorithm, hyper, scores, preds, truths = best
        rows_since = 0
    else:
        algorithm, hyper = artifact.algorithm, artifact.hyperparameters
        scores, preds, truths = _cross_validate(X, y, algorithm, hyper, folds, artifact.metric)
        mean_score = float(np.mean(scores))
        rows_since = accumulated

    final = build_learner(algorithm, hyper).fit(X, y)
    return ModelArtifact(
        model_id=artifact.model_id,
        project_id=artifact.project_id,
        target=artifact.target,
        metric=artifact.metric,
        budget=artifact.budget,
        algorithm=algorithm,
        hyperparameters=hyper,
        cv_scores=[float(s) for s in scores],
        selected_score=mean_score,
        feature_encoding=encoding,
        train_row_count=len(window),
        params=final.params_dict(),
        window_rows=window,
        feature_ranges=_feature_ranges(encoding, window),
        fold_predictions=preds,
        fold_truths=truths,
        seed=artifact.seed,
        rows_since_selection=rows_since,
    )
