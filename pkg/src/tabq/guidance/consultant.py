"""The analysis consultant: recommend, execute, decide when to summarize.

The recommendation logic is an explicit rule table (documented in
docs/guidance.md): each executed intention maps to the follow-ups below,
and the session role reorders (never invents) recommendations.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..analysis import execute
from ..analysis.result import AnalysisResult
from ..config import EngineConfig
from ..dataset import Dataset
from ..errors import ProfileNotReady
from ..insight.explain import explain_result
from ..insight.questions import _speakable
from ..insight.report import Report, compile_report
from ..matching import match_question
from ..matching.plans import Intention, QueryPlan
from ..profiling import ColumnType, ProfileStatus, TableProfile
from .session import Session, SessionSettings, SessionStatus

# Role bias: intentions listed first are promoted to the front of the
# recommendation list for that role; "general" applies no bias.
ROLE_BIAS: dict[str, tuple[Intention, ...]] = {
    "quality": (Intention.ROOT_CAUSE, Intention.ANOMALY),
    "operations": (Intention.COMPARISON, Intention.ANOMALY),
    "sales": (Intention.TREND, Intention.FORECAST, Intention.RANKING),
    "finance": (Intention.AGGREGATION, Intention.TREND),
    "general": (),
}

_QUESTION_TEMPLATES: dict[Intention, str] = {
    Intention.DISTRIBUTION: "What is the distribution of {a}?",
    Intention.PROPORTION: "What share does each {a} account for?",
    Intention.ROOT_CAUSE: "What drives the difference between high and low {a}?",
    Intention.RELATIONSHIP: "How does {a} relate to {b}?",
    Intention.COMPARISON: "How does {a} compare across {b}?",
    Intention.FORECAST: "Forecast {a} for the next periods",
    Intention.ANOMALY: "Are there outliers in {a}?",
    Intention.NORMALITY: "Is {a} normally distributed?",
    Intention.TREND: "How has {a} changed over time?",
    Intention.AGGREGATION: "What is the average {a}?",
}


@dataclass
class Recommendation:
    question: str
    plan: QueryPlan
    rationale: str  # which rule fired

    def to_dict(self) -> dict:
        return {
            "question": self.question,
            "plan": self.plan.to_dict(),
            "rationale": self.rationale,
        }


@dataclass
class SummaryProposal:
    propose: bool
    reason: str

    def to_dict(self) -> dict:
        return {"propose": self.propose, "reason": self.reason}


class Consultant:
    """Stateful guidance over one project's dataset and profile."""

    def __init__(self, dataset: Dataset, profiles: TableProfile,
                 config: EngineConfig | None = None):
        self.dataset = dataset
        self.profiles = profiles
        self.config = config or EngineConfig()

    # --- recommendations ------------------------------------------------------

    def _bind(self, intention: Intention, a: str, b: str | None, rationale: str
              ) -> Recommendation | None:
        template = _QUESTION_TEMPLATES[intention]
        text = template.replace("{a}", _speakable(a))
        if "{b}" in text:
            if b is None:
                return None
            text = text.replace("{b}", _speakable(b))
        try:
            result = match_question(text, self.profiles, self.config.matcher)
        except Exception:
            return None
        if result.top.intention != intention:
            return None
        return Recommendation(text, result.top, rationale)

    def first_recommendation(self, settings: SessionSettings) -> Recommendation:
        target = settings.target_column
        ctype = self.profiles.profile(target).ctype
        intention = (
            Intention.DISTRIBUTION if ctype == ColumnType.NUMERIC else Intention.PROPORTION
        )
        rec = self._bind(intention, target, None, "first-look")
        if rec is None:
            raise ProfileNotReady(f"could not bind a first question for {target!r}")
        return rec

    def _followup_rules(self, session: Session, result: AnalysisResult
                        ) -> list[Recommendation]:
        target = session.settings.target_column
        recs: list[Recommendation] = []
        intention = result.plan.intention

        if intention == Intention.DISTRIBUTION:
            recs += self._maybe(Intention.ROOT_CAUSE, target, None, "after-distribution")
        elif intention == Intention.ROOT_CAUSE:
            top = result.finding("top_factor")
            if top and self._ctype(top) == ColumnType.NUMERIC:
                recs += self._maybe(Intention.RELATIONSHIP, target, top, "after-root-cause")
            cat = self._top_categorical_factor(result)
            if cat:
                recs += self._maybe(Intention.COMPARISON, target, cat, "after-root-cause")
        elif intention == Intention.RELATIONSHIP:
            if self.profiles.columns_of_type(ColumnType.DATETIME):
                recs += self._maybe(Intention.FORECAST, target, None, "after-relationship")
            else:
                recs += self._maybe(Intention.ANOMALY, target, None, "after-relationship")
        elif intention == Intention.ANOMALY:
            recs += self._maybe(Intention.NORMALITY, target, None, "after-anomaly")
        elif intention in (Intention.COMPARISON, Intention.PROPORTION):
            recs += self._maybe(Intention.ROOT_CAUSE, target, None, "after-comparison")

        # generic padding so the user always has somewhere to go next
        asked = {q for q, _, _ in session.history}
        for intention2, a, b, tag in self._generic_candidates(target):
            if len(recs) >= 4:
                break
            rec = self._bind(intention2, a, b, tag)
            if rec and rec.question not in asked and all(
                rec.question != r.question for r in recs
            ):
                recs.append(rec)
        return recs

    def _generic_candidates(self, target: str):
        ctype = self._ctype(target)
        if ctype == ColumnType.NUMERIC:
            yield Intention.ANOMALY, target, None, "explore"
            if self.profiles.columns_of_type(ColumnType.DATETIME):
                yield Intention.TREND, target, None, "explore"
            yield Intention.NORMALITY, target, None, "explore"
            partner = self._strongest_partner(target)
            if partner:
                yield Intention.RELATIONSHIP, target, partner, "explore"
            yield Intention.AGGREGATION, target, None, "explore"
        else:
            yield Intention.PROPORTION, target, None, "explore"

    def _maybe(self, intention: Intention, a: str, b: str | None, tag: str
               ) -> list[Recommendation]:
        rec = self._bind(intention, a, b, tag)
        return [rec] if rec else []

    def _ctype(self, name: str) -> ColumnType | None:
        try:
            return self.profiles.profile(name).ctype
        except KeyError:
            return None

    def _strongest_partner(self, column: str) -> str | None:
        matrix = self.profiles.correlation
        if matrix is None or column not in matrix.columns:
            return None
        best, best_r = None, 0.0
        for other in matrix.columns:
            if other == column:
                continue
            r = matrix.get(column, other)
            if r is not None and abs(r) > best_r:
                best, best_r = other, abs(r)
        return best

    def _top_categorical_factor(self, result: AnalysisResult) -> str | None:
        table = result.tables.get("factors")
        if table is None:
            return None
        for row in table.rows:
            if row[1] == "cramers_v":
                return row[0]
        return None

    def _apply_role_bias(self, role: str, recs: list[Recommendation]
                         ) -> list[Recommendation]:
        """Reorder by role preference without overriding the rule table:
        rule-fired follow-ups always precede exploratory padding."""
        bias = ROLE_BIAS.get(role, ())
        if not bias:
            return recs

        def key(pair):
            index, rec = pair
            precedence = 1 if rec.rationale == "explore" else 0
            try:
                promoted = bias.index(rec.plan.intention)
            except ValueError:
                promoted = len(bias)
            return (precedence, promoted, index)

        return [rec for _, rec in sorted(enumerate(recs), key=key)]

    # --- session operations ---------------------------------------------------

    def start_session(self, settings: SessionSettings, project_id: str = ""
                      ) -> tuple[Session, Recommendation]:
        if self.profiles.status != ProfileStatus.READY:
            raise ProfileNotReady("profile is not ready")
        settings.validate(self.profiles, self.config.roles)
        session = Session.create(project_id or self.dataset.project_id, settings)
        return session, self.first_recommendation(settings)

    def followups_for(self, session: Session, result: AnalysisResult
                      ) -> list[Recommendation]:
        """Rule-table follow-ups for a result, role-bias applied."""
        return self._apply_role_bias(
            session.settings.role, self._followup_rules(session, result)
        )

    def step(self, session: Session, question_or_pick: str | Recommendation
             ) -> tuple[AnalysisResult, list[Recommendation]]:
        session.require_active()
        if isinstance(question_or_pick, Recommendation):
            question, plan = question_or_pick.question, question_or_pick.plan
        else:
            question = question_or_pick
            plan = match_question(question, self.profiles, self.config.matcher).top
        result = execute(plan, self.dataset, self.profiles, self.config.analysis)
        result.insight_text = explain_result(result)
        recommendations = self.followups_for(session, result)
        result.followups = [r.question for r in recommendations]
        session.append(question, plan, result)
        return result, recommendations

    def should_summarize(self, session: Session) -> SummaryProposal:
        session.require_active()
        if len(session.history) >= 5:
            return SummaryProposal(True, "depth")
        if len(session.history) >= 3:
            earlier = set()
            for _, _, result in session.history[:-2]:
                earlier.update(self._focus_columns(result))
            last_two = session.history[-2:]
            novel = False
            for _, _, result in last_two:
                if not set(self._focus_columns(result)) <= earlier:
                    novel = True
            if not novel and earlier:
                return SummaryProposal(True, "novelty")
        return SummaryProposal(False, "continue")

    @staticmethod
    def _focus_columns(result: AnalysisResult) -> list[str]:
        columns = []
        for key in ("column", "value_column", "target", "top_factor", "column_a", "column_b"):
            value = result.finding(key)
            if isinstance(value, str):
                columns.append(value)
        return columns

    def summarize(self, session: Session) -> Report:
        if session.status == SessionStatus.CLOSED:
            session.require_active()  # raises SessionClosed
        report = compile_report(session)
        if session.status == SessionStatus.ACTIVE:
            session.advance(SessionStatus.SUMMARY_PROPOSED)
        session.advance(SessionStatus.CLOSED)
        return report
