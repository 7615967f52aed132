"""Deterministic language artifacts with an optional pluggable model client."""

from .client import ModelClient, RemoteClient, TemplateClient
from .explain import explain_result
from .knowledge import KnowledgeSnippet, KnowledgeStore, RetrievalResult
from .prompts import (
    EvalCase,
    PromptCandidate,
    PromptEvalRecord,
    PromptOptimization,
    optimize_prompt,
)
from .questions import SuggestedQuestion, generate_top_questions, interestingness
from .render import extract_numerals, fmt_num, numerals_traceable, numbers_survive
from .report import Report, ReportStep, compile_report
from .summary import generate_data_summary, strongest_pairs, summary_facts

__all__ = [
    "EvalCase",
    "KnowledgeSnippet",
    "KnowledgeStore",
    "ModelClient",
    "PromptCandidate",
    "PromptEvalRecord",
    "PromptOptimization",
    "RemoteClient",
    "Report",
    "ReportStep",
    "RetrievalResult",
    "SuggestedQuestion",
    "TemplateClient",
    "compile_report",
    "explain_result",
    "extract_numerals",
    "fmt_num",
    "generate_data_summary",
    "generate_top_questions",
    "interestingness",
    "numbers_survive",
    "numerals_traceable",
    "optimize_prompt",
    "strongest_pairs",
    "summary_facts",
]
