"""Report compilation: settings, steps, summary; exports to JSON and Markdown."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..analysis.result import AnalysisResult
from ..errors import EmptySession
from .render import fmt_num


@dataclass
class ReportStep:
    index: int
    question: str
    plan: dict
    chart: dict
    findings: list
    tables: dict
    insight_text: str

    def to_dict(self) -> dict:
        return {
            "index": self.index,
            "question": self.question,
            "plan": self.plan,
            "chart": self.chart,
            "findings": self.findings,
            "tables": self.tables,
            "insight_text": self.insight_text,
        }


@dataclass
class Report:
    report_id: str
    session_id: str
    settings: dict
    steps: list[ReportStep] = field(default_factory=list)
    summary_text: str = ""

    def to_dict(self) -> dict:
        return {
            "schema": "report/v1",
            "report_id": self.report_id,
            "session_id": self.session_id,
            "settings": self.settings,
            "steps": [s.to_dict() for s in self.steps],
            "summary_text": self.summary_text,
        }

    @classmethod
    def from_dict(cls, doc: dict) -> "Report":
        return cls(
            report_id=doc["report_id"],
            session_id=doc["session_id"],
            settings=doc["settings"],
            steps=[ReportStep(**s) for s in doc["steps"]],
            summary_text=doc.get("summary_text", ""),
        )

    def to_markdown(self) -> str:
        lines = ["# Analysis report", ""]
        lines.append("## Settings")
        for key in ("description", "role", "goal", "target_column"):
            if key in self.settings:
                lines.append(f"- {key.replace('_', ' ')}: {self.settings[key]}")
        lines.append("")
        for step in self.steps:
            lines.append(f"## Step {step.index + 1}: {step.question}")
            lines.append(f"- chart: {step.chart.get('kind')} ({step.chart.get('title')})")
            lines.append("")
            lines.append(step.insight_text)
            lines.append("")
        lines.append("## Summary")
        lines.append(self.summary_text)
        lines.append("")
        return "\n".join(lines)


def _step_phrase(question: str, result: AnalysisResult) -> str:
    focus = result.finding("top_factor") or result.finding("column") \
        or result.finding("value_column") or ""
    intent = result.plan.intention.value.lower()
    bits = [f"a {intent} step on {focus}" if focus else f"a {intent} step"]
    top_factor = result.finding("top_factor")
    if top_factor:
        bits.append(f"naming {top_factor} as the leading factor")
    p = result.finding("p_value")
    if p is not None:
        bits.append(f"with p = {fmt_num(p)}")
    return " ".join(bits)


def compile_report(session) -> Report:
    """Compile a guidance session into an ordered report document.

    `session` provides session_id, settings (as a dict), and an ordered
    history of (question, plan, AnalysisResult) triples.
    """
    history = list(session.history)
    if not history:
        raise EmptySession("session has no recorded steps")

    settings = session.settings.to_dict() if hasattr(session.settings, "to_dict") else dict(
        session.settings
    )
    steps = []
    for index, (question, plan, result) in enumerate(history):
        steps.append(
            ReportStep(
                index=index,
                question=question,
                plan=plan.to_dict(),
                chart=result.chart.to_dict(),
                findings=[[k, v] for k, v in result.findings],
                tables={name: t.to_dict() for name, t in result.tables.items()},
                insight_text=result.insight_text,
            )
        )

    phrases = [
        f"step {i + 1} ran {_step_phrase(q, r)}"
        for i, (q, _, r) in enumerate(history)
    ]
    target = settings.get("target_column", "")
    summary = (
        f"This session examined {target or 'the dataset'} in {fmt_num(len(history))} "
        f"step(s): " + "; ".join(phrases) + "."
    )
    return Report(
        # deterministic id: replaying a session must rebuild the same report
        report_id=f"rep-{session.session_id}",
        session_id=session.session_id,
        settings=settings,
        steps=steps,
        summary_text=summary,
    )
