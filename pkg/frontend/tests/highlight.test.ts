import { describe, expect, it } from "vitest";

import { renderHighlightedQuestion, renderPlanCard } from "../src/highlight.js";
import type { HighlightsDoc, QueryResponseDoc } from "../src/types.js";
import queryFixture from "./fixtures/query_quality.json";

const fixture = queryFixture as unknown as QueryResponseDoc;

describe("parsed-question highlighting", () => {
  it("paints the example question with all three keyword classes", () => {
    // the fixture is the engine's real response to the demo question
    // "What is the difference between high quality and low quality"
    const markup = renderHighlightedQuestion(fixture.highlights);
    expect(markup).toContain('<span class="kw-column">quality</span>');
    expect(markup).toContain('<span class="kw-intention">difference</span>');
    expect(markup).not.toContain('<span class="kw-column">difference</span>');
  });

  it("paints restriction keywords", () => {
    const highlights: HighlightsDoc = {
      tokens: ["top", "10", "products", "by", "sum", "of", "sales"],
      column: [[2, 3], [6, 7]],
      restriction: [[0, 1], [4, 5]],
      intention: [],
    };
    const markup = renderHighlightedQuestion(highlights);
    expect(markup).toContain('<span class="kw-restriction">top</span>');
    expect(markup).toContain('<span class="kw-restriction">sum</span>');
    expect(markup).toContain('<span class="kw-column">products</span>');
    expect(markup).toContain('<span class="kw-column">sales</span>');
  });

  it("escapes token content", () => {
    const highlights: HighlightsDoc = {
      tokens: ["<script>"],
      column: [],
      restriction: [],
      intention: [],
    };
    expect(renderHighlightedQuestion(highlights)).not.toContain("<script>");
  });

  it("renders plan cards with intention and confidence", () => {
    const markup = renderPlanCard(fixture.match.candidates[0], 0, true);
    expect(markup).toContain("RootCause");
    expect(markup).toContain("picked");
    expect(markup).toContain("quality");
  });

  it("is deterministic", () => {
    const a = renderHighlightedQuestion(fixture.highlights);
    const b = renderHighlightedQuestion(fixture.highlights);
    expect(a).toBe(b);
  });
});
