"""What-if simulation: search feature ranges for the best predicted target."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..config import AutomlConfig
from ..errors import EmptyRange, UnknownFeature
from .training import ModelArtifact


@dataclass
class SimulationRequest:
    """Per-feature ranges or fixed values plus an objective.

    Features not listed are held at their training baseline (median for
    numeric, modal level for categorical). Categorical features may only
    be fixed, never ranged.
    """

    ranges: dict[str, tuple[float, float]] = field(default_factory=dict)
    fixed: dict[str, object] = field(default_factory=dict)
    objective: str = "maximize"  # or "minimize"
    budget: int | None = None
    seed: int | None = None

    @classmethod
    def from_dict(cls, doc: dict) -> "SimulationRequest":
        ranges = {k: (float(v[0]), float(v[1])) for k, v in doc.get("ranges", {}).items()}
        return cls(
            ranges=ranges,
            fixed=dict(doc.get("fixed", {})),
            objective=doc.get("objective", "maximize"),
            budget=doc.get("budget"),
            seed=doc.get("seed"),
        )


@dataclass
class SimulationResult:
    best_configuration: dict
    predicted_target: float
    trace: list[dict]  # [{feature values..., "prediction": y}]
    objective: str
    extrapolation_warnings: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "best_configuration": self.best_configuration,
            "predicted_target": self.predicted_target,
            "objective": self.objective,
            "extrapolation_warnings": self.extrapolation_warnings,
            "trace": self.trace,
        }

    def trace_csv(self) -> str:
        if not self.trace:
            return ""
        columns = list(self.trace[0])
        lines = [",".join(columns)]
        for point in self.trace:
            lines.append(",".join(str(point[c]) for c in columns))
        return "\n".join(lines) + "\n"


def _latin_hypercube(n: int, dims: int, rng: np.random.Generator) -> np.ndarray:
    """n samples in [0,1)^dims, one per stratum along every axis."""
    out = np.empty((n, dims))
    for j in range(dims):
        strata = (np.arange(n) + rng.random(n)) / n
        out[:, j] = rng.permutation(strata)
    return out


def simulate(
    artifact: ModelArtifact,
    request: SimulationRequest,
    config: AutomlConfig | None = None,
) -> SimulationResult:
    """Latin-hypercube search over the free ranges; returns the arg-best.

    Ranges may extend up to the configured slack beyond the span observed
    at training time; anything further is evaluated but flagged with an
    extrapolation warning.
    """
    config = config or AutomlConfig()
    encoding = artifact.feature_encoding
    known = set(encoding.columns())
    for name in list(request.ranges) + list(request.fixed):
        if name not in known:
            raise UnknownFeature(f"model has no feature {name!r}")
    for name in request.ranges:
        if name in encoding.categorical:
            raise UnknownFeature(f"categorical feature {name!r} only accepts a fixed value")

    warnings: list[str] = []
    free: list[tuple[str, float, float]] = []
    for name, (lo, hi) in sorted(request.ranges.items()):
        if lo > hi:
            raise EmptyRange(f"range for {name!r} is empty: [{lo}, {hi}]")
        seen_lo, seen_hi = artifact.feature_ranges[name]
        slack = (seen_hi - seen_lo) * config.range_slack
        if lo < seen_lo - slack or hi > seen_hi + slack:
            warnings.append(
                f"{name}: requested [{lo:g}, {hi:g}] extrapolates beyond "
                f"training range [{seen_lo:g}, {seen_hi:g}]"
            )
        free.append((name, lo, hi))

    baseline: dict[str, object] = {}
    for name in encoding.numeric + encoding.datetime:
        values = [encoding.encode_value(name, row[name])[0] for row in artifact.window_rows]
        baseline[name] = float(np.median(values))
    for name, levels in encoding.categorical.items():
        counts = {level: 0 for level in levels}
        for row in artifact.window_rows:
            label = str(row[name])
            if label in counts:
                counts[label] += 1
        baseline[name] = max(counts, key=lambda lv: (counts[lv], lv)) if counts else ""
    baseline.update(request.fixed)

    budget = request.budget or config.simulate_budget
    seed = artifact.seed if request.seed is None else request.seed
    rng = np.random.default_rng(seed)

    if free:
        unit = _latin_hypercube(budget, len(free), rng)
        points = []
        for i in range(budget):
            point = dict(baseline)
            for j, (name, lo, hi) in enumerate(free):
                point[name] = lo + (hi - lo) * float(unit[i, j])
            points.append(point)
    else:
        points = [dict(baseline)]

    predictions = artifact.predict_rows(points)
    maximize = request.objective == "maximize"
    best_index = int(np.argmax(predictions) if maximize else np.argmin(predictions))
    best_value = float(predictions[best_index])
    best_point = points[best_index]

    # Piecewise-constant surrogates (trees) produce plateaus of exactly tied
    # predictions; the centroid of the tied points is the canonical optimum,
    # kept only if the model really predicts the same value there.
    tied = [i for i, p in enumerate(predictions) if float(p) == best_value]
    if len(tied) > 1 and free:
        candidate = dict(best_point)
        for name, _, _ in free:
            candidate[name] = float(np.mean([points[i][name] for i in tied]))
        if float(artifact.predict_rows([candidate])[0]) == best_value:
            best_point = candidate

    trace = []
    for point, prediction in zip(points, predictions):
        entry = {k: point[k] for k in sorted(point)}
        entry["prediction"] = float(prediction)
        trace.append(entry)

    return SimulationResult(
        best_configuration={k: best_point[k] for k in sorted(best_point)},
        predicted_target=best_value,
        trace=trace,
        objective=request.objective,
        extrapolation_warnings=warnings,
    )
