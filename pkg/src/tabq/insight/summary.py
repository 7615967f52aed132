"""Deterministic data summaries from table profiles."""

from __future__ import annotations

from ..errors import ProfileNotReady
from ..profiling import ColumnType, ProfileStatus, TableProfile
from .client import ModelClient, TemplateClient
from .render import fmt_num, numbers_survive


def strongest_pairs(profiles: TableProfile, k: int = 3) -> list[tuple[str, str, float]]:
    """The k strongest column pairs by association strength, descending."""
    matrix = profiles.association
    if matrix is None:
        return []
    pairs = []
    cols = matrix.columns
    for i in range(len(cols)):
        for j in range(i + 1, len(cols)):
            value = matrix.values[i][j]
            if value is not None:
                pairs.append((cols[i], cols[j], float(value)))
    pairs.sort(key=lambda p: (-p[2], p[0], p[1]))
    return pairs[:k]


def summary_facts(profiles: TableProfile) -> list[float]:
    """Every number the summary template may render, for fidelity checks."""
    census: dict[ColumnType, int] = {}
    for p in profiles.column_profiles:
        census[p.ctype] = census.get(p.ctype, 0) + 1
    facts: list[float] = [profiles.row_count, len(profiles.column_profiles)]
    facts += list(census.values())
    facts += [v for _, _, v in strongest_pairs(profiles, k=3)]
    facts += [p.missing_count for p in profiles.column_profiles]
    return facts


def generate_data_summary(
    profiles: TableProfile,
    client: ModelClient | None = None,
) -> str:
    """Template-rendered subject summary of a profiled table.

    With a model client configured, the template output is offered for
    paraphrase; if any factual numeral fails to survive verbatim, the
    deterministic template text is returned instead.
    """
    if profiles.status != ProfileStatus.READY:
        raise ProfileNotReady("profile is not ready")

    census: dict[ColumnType, int] = {}
    for p in profiles.column_profiles:
        census[p.ctype] = census.get(p.ctype, 0) + 1

    lines = []
    column_names = ", ".join(p.name for p in profiles.column_profiles)
    lines.append(
        f"This dataset holds {fmt_num(profiles.row_count)} rows across "
        f"{fmt_num(len(profiles.column_profiles))} columns: {column_names}."
    )
    census_bits = [
        f"{fmt_num(count)} {ctype.value.lower()}"
        for ctype, count in sorted(census.items(), key=lambda kv: kv[0].value)
    ]
    lines.append("Column types: " + ", ".join(census_bits) + ".")

    pairs = strongest_pairs(profiles, k=3)
    if pairs:
        described = "; ".join(
            f"{a} and {b} (strength {fmt_num(v)})" for a, b, v in pairs
        )
        lines.append(f"The strongest relationships are {described}.")

    missing = [
        (p.name, p.missing_count)
        for p in sorted(
            profiles.column_profiles, key=lambda p: (-p.missing_count, p.name)
        )
        if p.missing_count > 0
    ][:3]
    if missing:
        described = ", ".join(f"{name} ({fmt_num(count)} missing)" for name, count in missing)
        lines.append(f"Columns with missing data: {described}.")
    else:
        lines.append("No column has missing cells.")

    template_text = " ".join(lines)
    if client is None or isinstance(client, TemplateClient):
        return template_text

    prompt = (
        "Paraphrase the following data summary for a business reader. "
        "Keep every number exactly as written.\n"
        f"{TemplateClient.MARKER}{template_text}"
    )
    candidate = client.complete(prompt)
    if numbers_survive(template_text, candidate):
        return candidate
    return template_text
