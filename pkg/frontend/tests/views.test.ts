import { describe, expect, it } from "vitest";

import { initialState, type ViewState } from "../src/state.js";
import {
  renderApp,
  renderAskView,
  renderGuidanceView,
  renderInsightView,
  renderResultPanel,
  renderSimulationView,
} from "../src/views.js";
import type {
  InsightDoc,
  ModelDoc,
  QueryResponseDoc,
  SimulationResultDoc,
  TableProfileDoc,
} from "../src/types.js";
import insightFixture from "./fixtures/insight_solar.json";
import modelFixture from "./fixtures/model_quadratic.json";
import profileFixture from "./fixtures/profile_solar.json";
import queryFixture from "./fixtures/query_quality.json";
import simFixture from "./fixtures/simulation_quadratic.json";

const query = queryFixture as unknown as QueryResponseDoc;
const insight = insightFixture as unknown as InsightDoc;
const profile = profileFixture as unknown as TableProfileDoc;

function askState(): ViewState {
  return {
    ...initialState(),
    tab: "ask",
    projectId: "solar",
    profile,
    question: "What is the difference between high quality and low quality",
    queryResponse: query,
  };
}

describe("views are pure", () => {
  it("rendering the same state twice yields identical markup", () => {
    const state = askState();
    expect(renderApp(state)).toBe(renderApp(state));
  });

  it("ask view shows plans, chart, insight text and followups", () => {
    const markup = renderAskView(askState());
    expect(markup).toContain("plan-card");
    expect(markup).toContain("<svg");
    expect(markup).toContain("insight-text");
    expect(markup).toContain("kw-column");
    for (const followup of query.result.followups) {
      expect(markup).toContain(`data-question="${followup}"`);
    }
  });

  it("insight view lists exactly the ten clickable questions", () => {
    const state: ViewState = { ...initialState(), tab: "insight", insight };
    const markup = renderInsightView(state);
    const buttons = markup.match(/data-action="run-question"/g) ?? [];
    expect(buttons.length).toBe(10);
    expect(markup).toContain(insight.subject_summary.slice(0, 40));
  });

  it("guidance view shows the settings form before a session exists", () => {
    const state: ViewState = { ...initialState(), tab: "guidance", profile };
    const markup = renderGuidanceView(state);
    expect(markup).toContain("setting-description");
    expect(markup).toContain("setting-role");
    expect(markup).toContain("setting-goal");
    expect(markup).toContain("setting-target");
    // settings form mirrors the documented role list
    for (const role of ["operations", "quality", "sales", "finance", "general"]) {
      expect(markup).toContain(`>${role}</option>`);
    }
  });

  it("guidance view surfaces the summary proposal banner when the API signals it", () => {
    const state: ViewState = {
      ...initialState(),
      tab: "guidance",
      guidance: {
        sessionId: "abc12345",
        settings: {},
        steps: [],
        recommendations: [],
        proposal: { propose: true, reason: "depth" },
        report: null,
      },
    };
    const markup = renderGuidanceView(state);
    expect(markup).toContain("proposal-banner");
    expect(markup).toContain("depth");
    const without: ViewState = {
      ...state,
      guidance: { ...state.guidance, proposal: { propose: false, reason: "continue" } },
    };
    expect(renderGuidanceView(without)).not.toContain("proposal-banner");
  });

  it("simulation view bounds sliders by the training ranges", () => {
    const model = modelFixture as unknown as ModelDoc;
    const [lo, hi] = model.feature_ranges["x"] as [number, number];
    const state: ViewState = {
      ...initialState(),
      tab: "simulation",
      simulation: {
        models: [],
        model,
        ranges: { x: [lo, hi] },
        objective: "maximize",
        result: simFixture as unknown as SimulationResultDoc,
      },
    };
    const markup = renderSimulationView(state);
    expect(markup).toContain(`min="${lo}"`);
    expect(markup).toContain(`max="${hi}"`);
    expect(markup).toContain("objective-toggle");
    expect(markup).toContain("best-marker");
  });

  it("result panel renders machine tables behind disclosure widgets", () => {
    const markup = renderResultPanel(query.result);
    expect(markup).toContain("<details");
    expect(markup).toContain("factors");
    // the summary key-value mirror is internal, not a user-facing table
    expect(markup).not.toContain("<summary>summary</summary>");
  });
});
