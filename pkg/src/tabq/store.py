"""File-backed stores: one directory per project, versioned JSON documents.

Layout (shared verbatim by the CLI and the service):

    <data_dir>/<project_id>/
        project.json            project/v1 metadata + warnings
        dataset.json            dataset/v1 raw snapshot
        profile.json            profile/v1 statistics + matrices
        models/<model_id>.json  model/v1 artifacts
        sessions/<id>.jsonl     append-only session event logs
        reports/<id>.json       report/v1 compiled reports
        knowledge.jsonl         optional newline-delimited snippets
"""

from __future__ import annotations

import json
import threading
from datetime import datetime, timezone
from pathlib import Path

from .dataset import Dataset
from .errors import UnknownProject, UnknownReport
from .profiling import TableProfile


def _write_json(path: Path, doc: dict) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(path.suffix + ".tmp")
    tmp.write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    tmp.replace(path)


def _read_json(path: Path) -> dict:
    return json.loads(path.read_text(encoding="utf-8"))


class ProjectStore:
    """Persistence for one data directory holding many projects."""

    def __init__(self, data_dir: str | Path):
        self.data_dir = Path(data_dir)
        self.data_dir.mkdir(parents=True, exist_ok=True)
        self._lock = threading.Lock()

    def project_dir(self, project_id: str) -> Path:
        return self.data_dir / project_id

    def exists(self, project_id: str) -> bool:
        return (self.project_dir(project_id) / "project.json").is_file()

    def list_projects(self) -> list[str]:
        return sorted(
            p.name for p in self.data_dir.iterdir() if (p / "project.json").is_file()
        )

    def create_project(self, project_id: str, name: str, dataset: Dataset) -> None:
        with self._lock:
            meta = {
                "schema": "project/v1",
                "project_id": project_id,
                "name": name,
                "created_at": datetime.now(timezone.utc).isoformat(),
                "row_count": dataset.row_count,
                "columns": [{"name": c.name} for c in dataset.columns],
                "warnings": dataset.warnings,
            }
            _write_json(self.project_dir(project_id) / "project.json", meta)
            _write_json(self.project_dir(project_id) / "dataset.json", dataset.to_dict())

    def project_meta(self, project_id: str) -> dict:
        path = self.project_dir(project_id) / "project.json"
        if not path.is_file():
            raise UnknownProject(f"no such project: {project_id}")
        return _read_json(path)

    def load_dataset(self, project_id: str) -> Dataset:
        path = self.project_dir(project_id) / "dataset.json"
        if not path.is_file():
            raise UnknownProject(f"no such project: {project_id}")
        return Dataset.from_dict(_read_json(path))

    def save_profile(self, project_id: str, profile: TableProfile) -> None:
        _write_json(self.project_dir(project_id) / "profile.json", profile.to_dict())

    def load_profile(self, project_id: str) -> TableProfile | None:
        path = self.project_dir(project_id) / "profile.json"
        if not path.is_file():
            if not self.exists(project_id):
                raise UnknownProject(f"no such project: {project_id}")
            return None
        return TableProfile.from_dict(_read_json(path))

    # --- models ------------------------------------------------------------

    def save_model(self, project_id: str, model_id: str, doc: dict) -> None:
        _write_json(self.project_dir(project_id) / "models" / f"{model_id}.json", doc)

    def load_model(self, project_id: str, model_id: str) -> dict | None:
        path = self.project_dir(project_id) / "models" / f"{model_id}.json"
        return _read_json(path) if path.is_file() else None

    def find_model(self, model_id: str) -> tuple[str, dict] | None:
        """Locate a model by id across projects; returns (project_id, doc)."""
        for project_id in self.list_projects():
            doc = self.load_model(project_id, model_id)
            if doc is not None:
                return project_id, doc
        return None

    # --- sessions (append-only event logs) ---------------------------------

    def append_session_event(self, project_id: str, session_id: str, event: dict) -> None:
        path = self.project_dir(project_id) / "sessions" / f"{session_id}.jsonl"
        path.parent.mkdir(parents=True, exist_ok=True)
        with self._lock, path.open("a", encoding="utf-8") as fh:
            fh.write(json.dumps(event, sort_keys=True) + "\n")

    def load_session_events(self, project_id: str, session_id: str) -> list[dict]:
        path = self.project_dir(project_id) / "sessions" / f"{session_id}.jsonl"
        if not path.is_file():
            return []
        return [json.loads(line) for line in path.read_text(encoding="utf-8").splitlines() if line]

    def list_sessions(self, project_id: str) -> list[str]:
        path = self.project_dir(project_id) / "sessions"
        if not path.is_dir():
            return []
        return sorted(p.stem for p in path.glob("*.jsonl"))

    # --- reports -------------------------------------------------------------

    def save_report(self, project_id: str, report_id: str, doc: dict) -> None:
        _write_json(self.project_dir(project_id) / "reports" / f"{report_id}.json", doc)

    def find_report(self, report_id: str) -> dict:
        for project_id in self.list_projects():
            path = self.project_dir(project_id) / "reports" / f"{report_id}.json"
            if path.is_file():
                return _read_json(path)
        raise UnknownReport(f"no such report: {report_id}")
