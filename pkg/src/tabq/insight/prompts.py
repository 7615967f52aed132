"""Prompt optimization loop: score, regenerate, accept at threshold."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

from ..errors import EmptyEvalSet
from .client import ModelClient

# Seed prompts per task tag; callers may pass their own initial prompt.
SEED_PROMPTS = {
    "normality": "Decide whether the sample described below is normally distributed: {input}",
    "forecast": "Project the next values of the series described below: {input}",
    "comparison": "Compare the groups described below and state the difference: {input}",
    "root_cause": "Name the factor most responsible for the difference below: {input}",
    "anomaly": "List the outlying values in the data below: {input}",
    "relationship": "Describe how the two columns below move together: {input}",
    "summary": "Summarize the table described below: {input}",
}


@dataclass
class EvalCase:
    input: str
    gold: str


@dataclass
class PromptCandidate:
    text: str
    task: str
    generation: int

    def render(self, case_input: str) -> str:
        if "{input}" in self.text:
            return self.text.replace("{input}", case_input)
        return f"{self.text}\n{case_input}"


@dataclass
class PromptEvalRecord:
    candidate: PromptCandidate
    score: float
    accepted: bool

    def to_dict(self) -> dict:
        return {
            "prompt": self.candidate.text,
            "task": self.candidate.task,
            "generation": self.candidate.generation,
            "score": self.score,
            "accepted": self.accepted,
        }


@dataclass
class PromptOptimization:
    records: list[PromptEvalRecord] = field(default_factory=list)

    @property
    def best(self) -> PromptEvalRecord:
        return max(self.records, key=lambda r: (r.score, -r.candidate.generation))

    @property
    def accepted(self) -> bool:
        return any(r.accepted for r in self.records)


def exact_match_score(outputs: Sequence[str], golds: Sequence[str]) -> float:
    hits = sum(1 for out, gold in zip(outputs, golds) if out.strip() == gold.strip())
    return hits / len(golds)


def optimize_prompt(
    task: str,
    eval_set: list[EvalCase],
    client: ModelClient,
    generator: ModelClient,
    threshold: float = 0.9,
    max_iters: int = 5,
    initial_prompt: str | None = None,
    scorer: Callable[[Sequence[str], Sequence[str]], float] = exact_match_score,
) -> PromptOptimization:
    """Iterate candidate prompts until one scores at or above the threshold.

    Each iteration runs the client over the eval set, scores the outputs
    against gold in [0, 1], and either accepts the candidate or asks the
    generator for a replacement. Stops after max_iters with best-so-far;
    a record is accepted only when its score met the threshold.
    """
    if not eval_set:
        raise EmptyEvalSet("prompt optimization needs a non-empty eval set")

    text = initial_prompt or SEED_PROMPTS.get(task, "Answer for the input: {input}")
    candidate = PromptCandidate(text=text, task=task, generation=0)
    optimization = PromptOptimization()

    golds = [case.gold for case in eval_set]
    for iteration in range(max_iters):
        outputs = [client.complete(candidate.render(case.input)) for case in eval_set]
        score = float(scorer(outputs, golds))
        accepted = score >= threshold
        optimization.records.append(PromptEvalRecord(candidate, score, accepted))
        if accepted:
            break
        feedback = (
            f"The prompt below scored {score:.3f} on task {task!r}, under the "
            f"required {threshold:.3f}. Write an improved prompt; keep the "
            "{input} placeholder.\n"
            f"PROMPT:\n{candidate.text}"
        )
        replacement = generator.complete(feedback)
        candidate = PromptCandidate(text=replacement, task=task, generation=iteration + 1)
    return optimization
