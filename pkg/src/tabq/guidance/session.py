"""Guided-session state: settings, history, status transitions, event log."""

from __future__ import annotations

import uuid
from dataclasses import dataclass, field
from enum import Enum

from ..analysis.result import AnalysisResult
from ..config import DEFAULT_ROLES
from ..errors import SessionClosed, UnknownRole, UnknownTarget
from ..matching.plans import QueryPlan
from ..profiling import TableProfile


@dataclass
class SessionSettings:
    description: str
    role: str
    goal: str
    target_column: str

    def validate(self, profiles: TableProfile, roles: tuple[str, ...] = DEFAULT_ROLES) -> None:
        if self.role not in roles:
            raise UnknownRole(f"role {self.role!r} not in configured roles {list(roles)}")
        names = {p.name for p in profiles.column_profiles}
        if self.target_column not in names:
            raise UnknownTarget(f"target column {self.target_column!r} not in project")

    def to_dict(self) -> dict:
        return {
            "description": self.description,
            "role": self.role,
            "goal": self.goal,
            "target_column": self.target_column,
        }

    @classmethod
    def from_dict(cls, doc: dict) -> "SessionSettings":
        return cls(
            description=doc.get("description", ""),
            role=doc.get("role", "general"),
            goal=doc.get("goal", ""),
            target_column=doc["target_column"],
        )


class SessionStatus(str, Enum):
    ACTIVE = "Active"
    SUMMARY_PROPOSED = "SummaryProposed"
    CLOSED = "Closed"


_ORDER = {
    SessionStatus.ACTIVE: 0,
    SessionStatus.SUMMARY_PROPOSED: 1,
    SessionStatus.CLOSED: 2,
}


@dataclass
class Session:
    session_id: str
    project_id: str
    settings: SessionSettings
    history: list[tuple[str, QueryPlan, AnalysisResult]] = field(default_factory=list)
    status: SessionStatus = SessionStatus.ACTIVE

    @classmethod
    def create(cls, project_id: str, settings: SessionSettings) -> "Session":
        return cls(session_id=uuid.uuid4().hex, project_id=project_id, settings=settings)

    def require_active(self) -> None:
        if self.status != SessionStatus.ACTIVE:
            raise SessionClosed(f"session is {self.status.value}")

    def advance(self, status: SessionStatus) -> None:
        if _ORDER[status] < _ORDER[self.status]:
            raise SessionClosed(
                f"session status cannot move {self.status.value} -> {status.value}"
            )
        self.status = status

    def append(self, question: str, plan: QueryPlan, result: AnalysisResult) -> None:
        self.history.append((question, plan, result))

    # --- event log -----------------------------------------------------------

    def started_event(self) -> dict:
        return {
            "type": "session_started",
            "session_id": self.session_id,
            "project_id": self.project_id,
            "settings": self.settings.to_dict(),
        }

    @staticmethod
    def step_event(question: str, plan: QueryPlan, result: AnalysisResult) -> dict:
        return {
            "type": "step_recorded",
            "question": question,
            "plan": plan.to_dict(),
            "result": result.to_dict(),
        }

    def status_event(self) -> dict:
        return {"type": "status_changed", "status": self.status.value}

    @classmethod
    def replay(cls, events: list[dict]) -> "Session":
        """Rebuild a session from its append-only event log."""
        if not events or events[0]["type"] != "session_started":
            raise ValueError("event log must start with session_started")
        head = events[0]
        session = cls(
            session_id=head["session_id"],
            project_id=head["project_id"],
            settings=SessionSettings.from_dict(head["settings"]),
        )
        for event in events[1:]:
            if event["type"] == "step_recorded":
                session.history.append(
                    (
                        event["question"],
                        QueryPlan.from_dict(event["plan"]),
                        AnalysisResult.from_dict(event["result"]),
                    )
                )
            elif event["type"] == "status_changed":
                session.status = SessionStatus(event["status"])
        return session
