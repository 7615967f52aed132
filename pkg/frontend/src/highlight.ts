/**
 * Parsed-question highlighting: paint the three keyword classes the server
 * identified (column mentions, restrictions, intention keywords).
 */

import type { HighlightsDoc, QueryPlanDoc } from "./types.js";
import { esc, fmtCell } from "./render.js";

type SpanClass = "kw-column" | "kw-restriction" | "kw-intention";

export function renderHighlightedQuestion(highlights: HighlightsDoc): string {
  const classes = new Map<number, SpanClass>();
  const paint = (spans: [number, number][], cls: SpanClass) => {
    for (const [start, end] of spans) {
      for (let i = start; i < end; i++) {
        if (!classes.has(i)) classes.set(i, cls);
      }
    }
  };
  paint(highlights.column, "kw-column");
  paint(highlights.restriction, "kw-restriction");
  paint(highlights.intention, "kw-intention");

  const parts = highlights.tokens.map((token, i) => {
    const cls = classes.get(i);
    return cls
      ? `<span class="${cls}">${esc(token)}</span>`
      : `<span class="kw-plain">${esc(token)}</span>`;
  });
  return `<p class="parsed-question">${parts.join(" ")}</p>`;
}

export function renderPlanCard(plan: QueryPlanDoc, index: number, picked: boolean): string {
  const mentions = plan.mentions
    .map((m) => `<span class="kw-column">${esc(m.column)}</span> (${fmtCell(m.score)})`)
    .join(", ") || "<em>none</em>";
  const restrictions = plan.restrictions
    .map((r) => {
      const operand = r.operand === null ? "" : `(${fmtCell(r.operand)})`;
      const target = r.target_column ? ` on ${esc(r.target_column)}` : "";
      return `<span class="kw-restriction">${esc(r.kind)}${operand}</span>${target}`;
    })
    .join(", ") || "<em>none</em>";
  return (
    `<div class="plan-card${picked ? " picked" : ""}" data-action="pick-candidate" data-index="${index}">` +
    `<div class="plan-rank">#${index + 1} · confidence ${fmtCell(plan.confidence)}</div>` +
    `<div>intention: <span class="kw-intention">${esc(plan.intention)}</span></div>` +
    `<div>columns: ${mentions}</div>` +
    `<div>restrictions: ${restrictions}</div>` +
    `</div>`
  );
}
