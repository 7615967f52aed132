from __future__ import annotations

import sys
from pathlib import Path

import numpy as np
import pytest

from tabq.dataset import load_table
from tabq.engine import Engine
from tabq.profiling import build_profile

DATA_DIR = Path(__file__).resolve().parent.parent / "src" / "tabq" / "data"
TABLES = DATA_DIR / "tables"
CORPUS = DATA_DIR / "corpus.jsonl"

SOURCES = ("banking", "food", "health_care", "manufacture", "sales", "sport")


def make_factory_dataset(seed: int = 42, n: int = 300):
    """Small manufacturing-style table with a planted humidity dependency."""
    rng = np.random.default_rng(seed)
    rows = ["machine,shift,temperature,humidity,electrical_test,inspect_date"]
    for i in range(n):
        h = rng.normal(50, 5)
        et = h * 0.18 + rng.normal(0, 0.05)
        machine = f"m{rng.integers(0, 4)}"
        shift = "day" if rng.random() < 0.5 else "night"
        rows.append(
            f"{machine},{shift},{rng.normal(21, 2):.3f},"
            f"{h:.3f},{et:.4f},2021-03-{i % 28 + 1:02d}"
        )
    return load_table("\n".join(rows).encode(), project_id="factory")


@pytest.fixture(scope="session")
def factory_dataset():
    return make_factory_dataset()


@pytest.fixture(scope="session")
def factory_profile(factory_dataset):
    return build_profile(factory_dataset)


@pytest.fixture(scope="session")
def bundled_engine(tmp_path_factory):
    """Engine with all six bundled tables ingested and profiled."""
    engine = Engine(tmp_path_factory.mktemp("bundled"))
    for csv_path in sorted(TABLES.glob("*.csv")):
        _, job = engine.create_project(
            csv_path.read_bytes(), name=csv_path.stem, project_id=csv_path.stem
        )
        engine.wait_for_job(job.job_id)
    return engine


_CRITERION_LINES: list[str] = []


def report_criterion(name: str, ok: bool, note: str = "") -> None:
    """One visible pass/fail line per acceptance criterion."""
    status = "PASS" if ok else "FAIL"
    suffix = f"  ({note})" if note else ""
    line = f"[{status}] {name}{suffix}"
    _CRITERION_LINES.append(line)
    print(line, file=sys.__stderr__)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if _CRITERION_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _CRITERION_LINES:
            terminalreporter.write_line(line)
