"""Engine error hierarchy.

Every error carries a stable machine-readable ``code`` plus the HTTP status
the service layer maps it to. The full code table is documented in
docs/api.md.
"""

from __future__ import annotations


class EngineError(Exception):
    """Base class for all engine errors."""

    code = "ENGINE_ERROR"
    http_status = 500

    def __init__(self, message: str = "", detail: dict | None = None):
        super().__init__(message or self.__class__.__name__)
        self.message = message or self.__class__.__name__
        self.detail = detail or {}

    def to_dict(self) -> dict:
        out = {"code": self.code, "message": self.message}
        if self.detail:
            out["detail"] = self.detail
        return out


# --- ingest ---------------------------------------------------------------

class EmptyInput(EngineError):
    code = "EMPTY_INPUT"
    http_status = 400


class UndecodableBytes(EngineError):
    code = "UNDECODABLE_BYTES"
    http_status = 400


class HeaderDuplicate(EngineError):
    code = "HEADER_DUPLICATE"
    http_status = 400


class AllMissing(EngineError):
    code = "ALL_MISSING"
    http_status = 422


class UnknownProject(EngineError):
    code = "UNKNOWN_PROJECT"
    http_status = 404


class UnknownJob(EngineError):
    code = "UNKNOWN_JOB"
    http_status = 404


class ProfileNotReady(EngineError):
    code = "PROFILE_NOT_READY"
    http_status = 409


# --- matcher ---------------------------------------------------------------

class EmptyQuestion(EngineError):
    code = "EMPTY_QUESTION"
    http_status = 400


class NoSignal(EngineError):
    code = "NO_SIGNAL"
    http_status = 422


class DanglingOperandRequired(EngineError):
    code = "DANGLING_OPERAND"
    http_status = 422


class EmptyCorpus(EngineError):
    code = "EMPTY_CORPUS"
    http_status = 400


# --- analysis ----------------------------------------------------------------

class ColumnTypeMismatch(EngineError):
    code = "COLUMN_TYPE_MISMATCH"
    http_status = 422


class EmptyAfterFilter(EngineError):
    code = "EMPTY_AFTER_FILTER"
    http_status = 422


class DegenerateSplit(EngineError):
    code = "DEGENERATE_SPLIT"
    http_status = 422


class TooFewRows(EngineError):
    code = "TOO_FEW_ROWS"
    http_status = 422


class TooManyLevels(EngineError):
    code = "TOO_MANY_LEVELS"
    http_status = 422


class NonNumericValue(EngineError):
    code = "NON_NUMERIC_VALUE"
    http_status = 422


class NonMonotoneTime(EngineError):
    code = "NON_MONOTONE_TIME"
    http_status = 422


class ConstantColumn(EngineError):
    code = "CONSTANT_COLUMN"
    http_status = 422


class UnknownIntention(EngineError):
    code = "UNKNOWN_INTENTION"
    http_status = 422


# --- automl -----------------------------------------------------------------

class NonNumericTarget(EngineError):
    code = "NON_NUMERIC_TARGET"
    http_status = 422


class AllFeaturesConstant(EngineError):
    code = "ALL_FEATURES_CONSTANT"
    http_status = 422


class LengthMismatch(EngineError):
    code = "LENGTH_MISMATCH"
    http_status = 400


class EmptyRange(EngineError):
    code = "EMPTY_RANGE"
    http_status = 400


class UnknownFeature(EngineError):
    code = "UNKNOWN_FEATURE"
    http_status = 404


class SchemaMismatch(EngineError):
    code = "SCHEMA_MISMATCH"
    http_status = 422


class UnknownModel(EngineError):
    code = "UNKNOWN_MODEL"
    http_status = 404


# --- insight ------------------------------------------------------------------

class TooFewColumns(EngineError):
    code = "TOO_FEW_COLUMNS"
    http_status = 422


class EmptyEvalSet(EngineError):
    code = "EMPTY_EVAL_SET"
    http_status = 400


class EmptySession(EngineError):
    code = "EMPTY_SESSION"
    http_status = 409


# --- guidance -----------------------------------------------------------------

class UnknownTarget(EngineError):
    code = "UNKNOWN_TARGET"
    http_status = 404


class UnknownRole(EngineError):
    code = "UNKNOWN_ROLE"
    http_status = 422


class SessionClosed(EngineError):
    code = "SESSION_CLOSED"
    http_status = 409


class UnknownSession(EngineError):
    code = "UNKNOWN_SESSION"
    http_status = 404


class UnknownReport(EngineError):
    code = "UNKNOWN_REPORT"
    http_status = 404
