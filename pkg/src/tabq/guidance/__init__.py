"""Guided analysis sessions."""

from .consultant import Consultant, Recommendation, SummaryProposal
from .session import Session, SessionSettings, SessionStatus

__all__ = [
    "Consultant",
    "Recommendation",
    "Session",
    "SessionSettings",
    "SessionStatus",
    "SummaryProposal",
]
