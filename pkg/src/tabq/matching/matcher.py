"""The question matcher: compose detectors into ranked query plans."""

from __future__ import annotations

from ..config import MatcherConfig
from ..errors import NoSignal, ProfileNotReady
from ..profiling import ProfileStatus, TableProfile
from .columns import match_columns, resolve_column_spans
from .intention import classify_intention
from .normalize import normalize
from .plans import ColumnMention, MatchResult, QueryPlan, Restriction
from .restrictions import parse_restrictions_lenient


def _geometric_mean(parts: list[float]) -> float:
    product = 1.0
    for p in parts:
        product *= max(0.0, min(1.0, p))
    return product ** (1.0 / len(parts))


def _rebind(restrictions: list[Restriction], mentions: list[ColumnMention]) -> list[Restriction]:
    kept = {m.column for m in mentions}
    out = []
    for r in restrictions:
        if r.target_column is not None and r.target_column not in kept:
            out.append(Restriction(r.kind, r.operand, None))
        else:
            out.append(r)
    return out


def _plan_key(plan: QueryPlan) -> tuple:
    return (
        plan.intention,
        tuple(sorted(m.column for m in plan.mentions)),
        tuple(sorted(r.signature() + (r.target_column,) for r in plan.restrictions)),
    )


def match_question(
    question: str,
    profiles: TableProfile,
    config: MatcherConfig | None = None,
) -> MatchResult:
    """Parse a question into at most three ranked QueryPlans.

    Candidates are the cross product of the top-2 intention hypotheses with
    two column-binding hypotheses (all resolved mentions, and the same list
    without its weakest mention). Confidence is the geometric mean of the
    mean mention score, the intention score, and restriction completeness.
    """
    config = config or MatcherConfig()
    if profiles.status != ProfileStatus.READY:
        raise ProfileNotReady("profile is not ready")

    tokens = normalize(question)
    all_spans = resolve_column_spans(tokens, profiles, config)
    mentions = match_columns(tokens, profiles, config)
    span_list = [m.span for m in all_spans]

    restrictions, dropped = parse_restrictions_lenient(tokens, all_spans, config)
    # Re-target restriction bindings onto the deduplicated mention list.
    restrictions = _rebind(restrictions, mentions)
    total_restrictions = len(restrictions) + dropped
    completeness = 1.0 if total_restrictions == 0 else len(restrictions) / total_restrictions

    intentions = classify_intention(
        tokens, mentions, profiles, config, excluded_spans=span_list
    )
    keyword_fired = not (
        len(intentions) == 1 and intentions[0][1] == config.fallback_intention_score
    )
    if not mentions and not keyword_fired:
        raise NoSignal("no column mentions and no intention keyword")

    binding_hypotheses: list[list[ColumnMention]] = [mentions]
    if mentions:
        weakest = min(mentions, key=lambda m: (m.score, -m.span[0]))
        reduced = [m for m in mentions if m is not weakest]
        binding_hypotheses.append(reduced)

    candidates: list[QueryPlan] = []
    seen: set[tuple] = set()
    for intention, intention_score in intentions[:2]:
        for hypothesis in binding_hypotheses:
            bound = _rebind(restrictions, hypothesis)
            # Mean mention score, but normalized by the full mention count so
            # dropping evidence can only lower a hypothesis, never raise it.
            mention_component = (
                sum(m.score for m in hypothesis) / len(mentions)
                if hypothesis
                else config.no_mention_score
            )
            confidence = _geometric_mean([mention_component, intention_score, completeness])
            plan = QueryPlan(
                mentions=list(hypothesis),
                restrictions=bound,
                intention=intention,
                confidence=confidence,
            )
            key = _plan_key(plan)
            if key in seen:
                continue
            seen.add(key)
            candidates.append(plan)

    candidates.sort(key=lambda p: -p.confidence)
    return MatchResult(candidates[: config.max_candidates])
