"""The model zoo: three deterministic, dependency-light regressors."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


class RidgeRegressor:
    """Linear regression via normal equations; bias is never penalized."""

    name = "linear_ridge"

    def __init__(self, lam: float = 0.0):
        self.lam = float(lam)
        self.weights: np.ndarray | None = None

    def fit(self, X: np.ndarray, y: np.ndarray) -> "RidgeRegressor":
        Xb = np.hstack([X, np.ones((X.shape[0], 1))])
        if self.lam == 0.0:
            self.weights, *_ = np.linalg.lstsq(Xb, y, rcond=None)
        else:
            d = Xb.shape[1]
            penalty = self.lam * np.eye(d)
            penalty[-1, -1] = 0.0
            self.weights = np.linalg.solve(Xb.T @ Xb + penalty, Xb.T @ y)
        return self

    def predict(self, X: np.ndarray) -> np.ndarray:
        Xb = np.hstack([X, np.ones((X.shape[0], 1))])
        return Xb @ self.weights

    def params_dict(self) -> dict:
        return {"lam": self.lam, "weights": [float(w) for w in self.weights]}

    @classmethod
    def from_params(cls, doc: dict) -> "RidgeRegressor":
        model = cls(doc["lam"])
        model.weights = np.asarray(doc["weights"], dtype=float)
        return model


class KNNRegressor:
    """k-nearest-neighbour mean with standardized features and Euclidean
    distance; distance ties break by training-row index."""

    name = "knn_regressor"

    def __init__(self, k: int = 5):
        self.k = int(k)
        self.mean: np.ndarray | None = None
        self.std: np.ndarray | None = None
        self.X: np.ndarray | None = None
        self.y: np.ndarray | None = None

    def fit(self, X: np.ndarray, y: np.ndarray) -> "KNNRegressor":
        self.mean = X.mean(axis=0)
        std = X.std(axis=0)
        self.std = np.where(std == 0.0, 1.0, std)
        self.X = (X - self.mean) / self.std
        self.y = np.asarray(y, dtype=float)
        return self

    def predict(self, X: np.ndarray) -> np.ndarray:
        Z = (X - self.mean) / self.std
        k = min(self.k, self.X.shape[0])
        out = np.empty(Z.shape[0])
        for i, z in enumerate(Z):
            d = np.sqrt(np.sum((self.X - z) ** 2, axis=1))
            order = np.lexsort((np.arange(d.size), d))
            out[i] = float(np.mean(self.y[order[:k]]))
        return out

    def params_dict(self) -> dict:
        return {
            "k": self.k,
            "mean": [float(v) for v in self.mean],
            "std": [float(v) for v in self.std],
            "X": [[float(v) for v in row] for row in self.X],
            "y": [float(v) for v in self.y],
        }

    @classmethod
    def from_params(cls, doc: dict) -> "KNNRegressor":
        model = cls(doc["k"])
        model.mean = np.asarray(doc["mean"], dtype=float)
        model.std = np.asarray(doc["std"], dtype=float)
        model.X = np.asarray(doc["X"], dtype=float)
        model.y = np.asarray(doc["y"], dtype=float)
        return model


@dataclass
class TreeNode:
    value: float | None = None
    feature: int | None = None
    threshold: float | None = None
    left: "TreeNode | None" = None
    right: "TreeNode | None" = None

    def to_dict(self) -> dict:
        if self.value is not None:
            return {"value": self.value}
        return {
            "feature": self.feature,
            "threshold": self.threshold,
            "left": self.left.to_dict(),
            "right": self.right.to_dict(),
        }

    @classmethod
    def from_dict(cls, doc: dict) -> "TreeNode":
        if "value" in doc:
            return cls(value=doc["value"])
        return cls(
            feature=doc["feature"],
            threshold=doc["threshold"],
            left=cls.from_dict(doc["left"]),
            right=cls.from_dict(doc["right"]),
        )


class RegressionTree:
    """CART regression tree: variance-reduction splits, min leaf 5."""

    name = "regression_tree"

    def __init__(self, max_depth: int = 5, min_leaf: int = 5):
        self.max_depth = int(max_depth)
        self.min_leaf = int(min_leaf)
        self.root: TreeNode | None = None

    def fit(self, X: np.ndarray, y: np.ndarray) -> "RegressionTree":
        self.root = self._grow(X, np.asarray(y, dtype=float), depth=0)
        return self

    def _grow(self, X: np.ndarray, y: np.ndarray, depth: int) -> TreeNode:
        n = y.size
        if depth >= self.max_depth or n < 2 * self.min_leaf:
            return TreeNode(value=float(np.mean(y)))
        split = self._best_split(X, y)
        if split is None:
            return TreeNode(value=float(np.mean(y)))
        feature, threshold = split
        mask = X[:, feature] <= threshold
        return TreeNode(
            feature=int(feature),
            threshold=float(threshold),
            left=self._grow(X[mask], y[mask], depth + 1),
            right=self._grow(X[~mask], y[~mask], depth + 1),
        )

    def _best_split(self, X: np.ndarray, y: np.ndarray) -> tuple[int, float] | None:
        n = y.size
        best: tuple[float, int, float] | None = None
        for feature in range(X.shape[1]):
            order = np.argsort(X[:, feature], kind="stable")
            xs = X[order, feature]
            ys = y[order]
            cum = np.cumsum(ys)
            cum2 = np.cumsum(ys * ys)
            total, total2 = cum[-1], cum2[-1]
            # split after position i (1-based left size), only between distinct xs
            for i in range(self.min_leaf, n - self.min_leaf + 1):
                if i < n and xs[i - 1] == xs[i]:
                    continue
                left_n, right_n = i, n - i
                if right_n < self.min_leaf:
                    break
                left_sse = float(cum2[i - 1] - cum[i - 1] ** 2 / left_n)
                right_sum = total - cum[i - 1]
                right_sse = float((total2 - cum2[i - 1]) - right_sum**2 / right_n)
                sse = left_sse + right_sse
                if best is None or sse < best[0] - 1e-12:
                    threshold = float((xs[i - 1] + xs[i]) / 2.0)
                    best = (sse, feature, threshold)
        if best is None:
            return None
        return best[1], best[2]

    def predict(self, X: np.ndarray) -> np.ndarray:
        out = np.empty(X.shape[0])
        for i, row in enumerate(X):
            node = self.root
            while node.value is None:
                node = node.left if row[node.feature] <= node.threshold else node.right
            out[i] = node.value
        return out

    def params_dict(self) -> dict:
        return {"max_depth": self.max_depth, "min_leaf": self.min_leaf,
                "root": self.root.to_dict()}

    @classmethod
    def from_params(cls, doc: dict) -> "RegressionTree":
        model = cls(doc["max_depth"], doc["min_leaf"])
        model.root = TreeNode.from_dict(doc["root"])
        return model


ALGORITHMS = {
    "linear_ridge": RidgeRegressor,
    "knn_regressor": KNNRegressor,
    "regression_tree": RegressionTree,
}


def build_learner(algorithm: str, hyperparameters: dict):
    if algorithm == "linear_ridge":
        return RidgeRegressor(hyperparameters["lam"])
    if algorithm == "knn_regressor":
        return KNNRegressor(hyperparameters["k"])
    if algorithm == "regression_tree":
        return RegressionTree(hyperparameters["max_depth"], hyperparameters.get("min_leaf", 5))
    raise ValueError(f"unknown algorithm {algorithm!r}")


def load_learner(algorithm: str, params: dict):
    return ALGORITHMS[algorithm].from_params(params)
