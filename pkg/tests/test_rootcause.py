from __future__ import annotations

import numpy as np
import pytest

from tabq.analysis.rootcause import Split, SplitKind, cohens_d, root_cause
from tabq.dataset import load_table
from tabq.errors import DegenerateSplit, TooFewRows
from tabq.profiling import build_profile


def planted_table(seed=0, n=500, decoys=9):
    """target = electrical_test; humidity = target + tiny noise; decoys independent."""
    rng = np.random.default_rng(seed)
    target = rng.normal(10, 2, n)
    humidity = target + rng.normal(0, 0.01, n)
    header = ["electrical_test", "humidity"] + [f"decoy_{i}" for i in range(decoys)]
    lines = [",".join(header)]
    decoy_values = rng.normal(0, 1, size=(n, decoys))
    for i in range(n):
        row = [f"{target[i]:.5f}", f"{humidity[i]:.5f}"]
        row += [f"{v:.5f}" for v in decoy_values[i]]
        lines.append(",".join(row))
    ds = load_table("\n".join(lines).encode(), project_id="planted")
    return ds, build_profile(ds)


def test_planted_factor_ranks_first():
    ds, profile = planted_table(seed=1)
    result = root_cause(ds, "electrical_test", profile)
    assert result.factors[0].column == "humidity"

    # oracle: Cohen's d for humidity dwarfs every decoy's
    target = np.array([float(c) for c in ds.column("electrical_test").cells])
    cut = np.median(target)
    high = target > cut
    hum = np.array([float(c) for c in ds.column("humidity").cells])
    d_hum = cohens_d(hum[high], hum[~high])
    assert d_hum == pytest.approx(result.factors[0].score, abs=1e-9)
    for factor in result.factors[1:]:
        assert d_hum > 3 * factor.score


def test_constant_target_degenerate_split():
    ds = load_table(b"t,x\n" + b"".join(f"1,{i}\n".encode() for i in range(20)))
    profile = build_profile(ds)
    with pytest.raises(DegenerateSplit):
        root_cause(ds, "t", profile)


def test_identical_factor_scores_zero_and_ranks_last():
    rng = np.random.default_rng(4)
    lines = ["t,active,flat"]
    for i in range(100):
        t = rng.normal(0, 1)
        lines.append(f"{t:.5f},{t + rng.normal(0, 0.1):.5f},7.0")
    ds = load_table("\n".join(lines).encode())
    profile = build_profile(ds)
    result = root_cause(ds, "t", profile)
    assert result.factors[-1].column == "flat"
    assert result.factors[-1].score == pytest.approx(0.0)


def test_too_few_rows_per_group():
    ds = load_table(b"t,x\n1,1\n2,2\n3,3\n4,4\n5,5\n6,6\n")
    profile = build_profile(ds)
    with pytest.raises(TooFewRows):
        root_cause(ds, "t", profile)


def test_affine_rescaling_keeps_scores():
    ds, profile = planted_table(seed=2, n=200, decoys=3)
    base = root_cause(ds, "electrical_test", profile)

    # rescale humidity by 1000x + shift; standardized difference is unchanged
    cells = [f"{float(c) * 1000 + 77:.5f}" for c in ds.column("humidity").cells]
    from tabq.dataset import Column, Dataset

    cols = [
        Column(c.name, cells if c.name == "humidity" else list(c.cells))
        for c in ds.columns
    ]
    scaled = Dataset("scaled", cols, ds.row_count)
    scaled_profile = build_profile(scaled)
    rescored = root_cause(scaled, "electrical_test", scaled_profile)
    assert [f.column for f in rescored.factors] == [f.column for f in base.factors]
    for a, b in zip(base.factors, rescored.factors):
        assert a.score == pytest.approx(b.score, rel=1e-9)


def test_monotone_target_transform_keeps_ranking():
    ds, profile = planted_table(seed=3, n=200, decoys=3)
    base = root_cause(ds, "electrical_test", profile)

    # cube the target: strictly monotone, same split membership as median split
    from tabq.dataset import Column, Dataset

    cells = [f"{float(c) ** 3:.7f}" for c in ds.column("electrical_test").cells]
    cols = [
        Column(c.name, cells if c.name == "electrical_test" else list(c.cells))
        for c in ds.columns
    ]
    cubed = Dataset("cubed", cols, ds.row_count)
    cubed_profile = build_profile(cubed)
    transformed = root_cause(cubed, "electrical_test", cubed_profile)
    assert [f.column for f in transformed.factors] == [f.column for f in base.factors]


def test_threshold_split_and_group_sizes():
    ds, profile = planted_table(seed=5, n=300, decoys=2)
    target = np.array([float(c) for c in ds.column("electrical_test").cells])
    cut = float(np.quantile(target, 0.7))
    result = root_cause(ds, "electrical_test", profile,
                        Split(SplitKind.THRESHOLD, threshold=cut))
    assert result.high_n == int((target > cut).sum())
    assert result.low_n == 300 - result.high_n


def test_binary_categorical_target():
    rng = np.random.default_rng(6)
    lines = ["passed,pressure,noise"]
    for i in range(200):
        passed = "yes" if rng.random() < 0.5 else "no"
        pressure = (2.0 if passed == "yes" else 0.0) + rng.normal(0, 0.5)
        lines.append(f"{passed},{pressure:.4f},{rng.normal(0, 1):.4f}")
    ds = load_table("\n".join(lines).encode())
    profile = build_profile(ds)
    result = root_cause(ds, "passed", profile)
    assert result.factors[0].column == "pressure"


def test_categorical_factor_scored_with_cramers_v(bundled_engine):
    ds = bundled_engine.dataset("manufacture")
    profile = bundled_engine.ready_profile("manufacture")
    result = root_cause(ds, "electrical_test", profile)
    methods = {f.column: f.method for f in result.factors}
    assert methods["machine"] == "cramers_v"
    assert methods["humidity"] == "cohens_d"
    assert result.factors[0].column == "humidity"
