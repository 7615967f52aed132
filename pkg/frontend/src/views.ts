/**
 * Pure view functions: ViewState in, HTML string out. Rendering the same
 * state twice yields byte-identical markup.
 */

import { renderChart, renderSimulationChart } from "./charts.js";
import { renderHighlightedQuestion, renderPlanCard } from "./highlight.js";
import { esc, fmtCell, renderTable } from "./render.js";
import type { ViewState } from "./state.js";
import type { AnalysisResultDoc } from "./types.js";

const TABS: [string, string][] = [
  ["upload", "Data"],
  ["insight", "Insight"],
  ["ask", "Ask"],
  ["guidance", "Guidance"],
  ["simulation", "Simulation"],
];

export function renderApp(state: ViewState): string {
  const tabs = TABS.map(
    ([id, label]) =>
      `<button class="tab${state.tab === id ? " active" : ""}" data-action="tab" data-tab="${id}">${label}</button>`,
  ).join("");
  const banner = state.error
    ? `<div class="error-banner">${esc(state.error)}</div>`
    : "";
  const busy = state.busy ? `<div class="busy">${esc(state.busy)}</div>` : "";
  return (
    `<header><h1>tabq console</h1><nav>${tabs}</nav>${projectBadge(state)}</header>` +
    banner + busy +
    `<main>${renderActiveView(state)}</main>`
  );
}

function projectBadge(state: ViewState): string {
  if (!state.projectId) return `<span class="badge">no project</span>`;
  return `<span class="badge">project: ${esc(state.projectId)}</span>`;
}

function renderActiveView(state: ViewState): string {
  switch (state.tab) {
    case "upload":
      return renderUploadView(state);
    case "insight":
      return renderInsightView(state);
    case "ask":
      return renderAskView(state);
    case "guidance":
      return renderGuidanceView(state);
    case "simulation":
      return renderSimulationView(state);
  }
}

// --- upload & profile --------------------------------------------------------

export function renderUploadView(state: ViewState): string {
  const projects = state.projects.length
    ? `<ul class="project-list">${state.projects
        .map(
          (p) =>
            `<li><button data-action="open-project" data-id="${esc(p.project_id)}">${esc(p.name)}</button> <small>${p.row_count ?? "?"} rows</small></li>`,
        )
        .join("")}</ul>`
    : "<p>No projects yet.</p>";
  const job = state.job
    ? `<p class="job-status">profiling job ${esc(state.job.job_id.slice(0, 8))}: <strong>${esc(state.job.status)}</strong></p>`
    : "";
  return (
    `<section class="view-upload">` +
    `<h2>Upload a CSV</h2>` +
    `<div class="dropzone" data-action="dropzone">Drop a CSV here or ` +
    `<label class="file-label">browse<input id="file-input" type="file" accept=".csv,text/csv"/></label></div>` +
    job +
    renderProfilePanel(state) +
    `<h2>Projects</h2>` + projects +
    `</section>`
  );
}

function renderProfilePanel(state: ViewState): string {
  const profile = state.profile;
  if (!profile) return "";
  if (profile.status !== "Ready") {
    return `<p>Profile status: ${esc(profile.status)}</p>`;
  }
  const rows = profile.column_profiles.map((p) => [
    p.name,
    p.ctype,
    p.count,
    p.missing_count,
    p.distinct_count,
    p.numeric_stats ? fmtCell(p.numeric_stats.mean) : "",
    p.numeric_stats ? fmtCell(p.numeric_stats.sample_std) : "",
  ]);
  return (
    `<h2>Profile (${profile.row_count} rows)</h2>` +
    renderTable(
      ["column", "type", "count", "missing", "distinct", "mean", "std"],
      rows,
    )
  );
}

// --- insight -------------------------------------------------------------------

export function renderInsightView(state: ViewState): string {
  if (!state.insight) {
    return `<section><h2>Insight</h2><p>Open a profiled project first, then <button data-action="load-insight">generate the report</button>.</p></section>`;
  }
  const questions = state.insight.top_questions
    .map(
      (q, i) =>
        `<li><button class="question" data-action="run-question" data-question="${esc(q.text)}">${esc(q.text)}</button> <small class="kw-intention">${esc(q.intention)}</small>${i === 0 ? "" : ""}</li>`,
    )
    .join("");
  return (
    `<section class="view-insight">` +
    `<h2>Subject summary</h2><p class="summary">${esc(state.insight.subject_summary)}</p>` +
    `<h2>Ten questions worth asking</h2><ol class="questions">${questions}</ol>` +
    `</section>`
  );
}

// --- ask --------------------------------------------------------------------------

export function renderAskView(state: ViewState): string {
  const response = state.queryResponse;
  let parsed = "";
  if (response) {
    const cards = response.match.candidates
      .map((c, i) => renderPlanCard(c, i, i === state.pickedCandidate))
      .join("");
    parsed =
      `<h3>How the question parsed</h3>` +
      renderHighlightedQuestion(response.highlights) +
      `<div class="legend"><span class="kw-column">column</span> <span class="kw-restriction">restriction</span> <span class="kw-intention">intention</span></div>` +
      `<div class="plan-cards">${cards}</div>` +
      renderResultPanel(response.result);
  }
  return (
    `<section class="view-ask">` +
    `<h2>Ask a question</h2>` +
    `<form data-action="ask-form" class="ask-form">` +
    `<input id="question-input" type="text" placeholder="e.g. top ten products by sum of sales" value="${esc(state.question)}"/>` +
    `<button type="submit">Ask</button></form>` +
    parsed +
    `</section>`
  );
}

export function renderResultPanel(result: AnalysisResultDoc): string {
  const followups = result.followups
    .map(
      (q) =>
        `<li><button class="question" data-action="run-question" data-question="${esc(q)}">${esc(q)}</button></li>`,
    )
    .join("");
  const tables = Object.keys(result.tables)
    .sort()
    .filter((name) => name !== "summary")
    .map(
      (name) =>
        `<details class="result-table"><summary>${esc(name)}</summary>${renderTable(result.tables[name].columns, result.tables[name].rows)}</details>`,
    )
    .join("");
  return (
    `<div class="result-panel">` +
    `<div class="chart-panel">${renderChart(result)}</div>` +
    `<p class="insight-text">${esc(result.insight_text)}</p>` +
    tables +
    (followups ? `<h3>Follow-ups</h3><ul class="followups">${followups}</ul>` : "") +
    `</div>`
  );
}

// --- guidance ----------------------------------------------------------------------

export function renderGuidanceView(state: ViewState): string {
  const g = state.guidance;
  if (!g.sessionId) {
    const roles = ["operations", "quality", "sales", "finance", "general"]
      .map((r) => `<option value="${r}">${r}</option>`)
      .join("");
    const targets = (state.profile?.column_profiles ?? [])
      .map((p) => `<option value="${esc(p.name)}">${esc(p.name)}</option>`)
      .join("");
    return (
      `<section class="view-guidance"><h2>Start a guided session</h2>` +
      `<form data-action="session-form" class="settings-form">` +
      `<label>What is this data about?<textarea id="setting-description"></textarea></label>` +
      `<label>Your role<select id="setting-role">${roles}</select></label>` +
      `<label>Analysis goal<input id="setting-goal" type="text"/></label>` +
      `<label>Target column<select id="setting-target">${targets}</select></label>` +
      `<button type="submit">Start session</button></form></section>`
    );
  }

  const steps = g.steps
    .map(
      (step, i) =>
        `<article class="session-step"><h3>Step ${i + 1}</h3>${renderResultPanel(step.result)}</article>`,
    )
    .join("");
  const recommendations = g.recommendations
    .map(
      (rec, i) =>
        `<li><button class="question" data-action="pick-recommendation" data-index="${i}">${esc(rec.question)}</button> <small>${esc(rec.rationale)}</small></li>`,
    )
    .join("");
  const proposalBanner = g.proposal?.propose
    ? `<div class="proposal-banner">The consultant suggests compiling a summary report (${esc(g.proposal.reason)}). <button data-action="summarize">Create report</button></div>`
    : "";
  const report = g.report
    ? `<article class="report-preview"><h3>Report ${esc(g.report.report_id)}</h3>` +
      `<p>${esc(g.report.summary_text)}</p>` +
      `<button data-action="download-report" data-id="${esc(g.report.report_id)}">Download Markdown</button></article>`
    : "";
  return (
    `<section class="view-guidance">` +
    `<h2>Session ${esc(g.sessionId.slice(0, 8))}</h2>` +
    proposalBanner +
    `<h3>Recommended next questions</h3><ul class="followups">${recommendations}</ul>` +
    steps + report +
    `</section>`
  );
}

// --- simulation -----------------------------------------------------------------------

export function renderSimulationView(state: ViewState): string {
  const sim = state.simulation;
  const picker =
    `<form data-action="model-form" class="model-form">` +
    `<label>Model id<input id="model-input" type="text" placeholder="trained model id"/></label>` +
    `<button type="submit">Load model</button></form>`;
  if (!sim.model) {
    return `<section class="view-simulation"><h2>What-if simulation</h2>${picker}<p>Train a model first (CLI or POST /projects/{id}/models), then load it by id.</p></section>`;
  }

  const sliders = Object.entries(sim.model.feature_ranges)
    .filter(([, range]) => typeof range[0] === "number")
    .map(([feature, range]) => {
      const [lo, hi] = range as [number, number];
      const current = sim.ranges[feature] ?? [lo, hi];
      return (
        `<fieldset class="range-row"><legend>${esc(feature)} <small>[${fmtCell(lo)} .. ${fmtCell(hi)}]</small></legend>` +
        `<input type="number" step="any" class="range-lo" data-feature="${esc(feature)}" value="${current[0]}" min="${lo}" max="${hi}"/>` +
        `<input type="number" step="any" class="range-hi" data-feature="${esc(feature)}" value="${current[1]}" min="${lo}" max="${hi}"/>` +
        `</fieldset>`
      );
    })
    .join("");

  const objective =
    `<div class="objective-toggle">` +
    `<label><input type="radio" name="objective" value="maximize"${sim.objective === "maximize" ? " checked" : ""}/> maximize</label>` +
    `<label><input type="radio" name="objective" value="minimize"${sim.objective === "minimize" ? " checked" : ""}/> minimize</label>` +
    `</div>`;

  let resultPanel = "";
  if (sim.result) {
    const freeFeatures = Object.keys(sim.ranges);
    const feature = freeFeatures[0] ?? Object.keys(sim.model.feature_ranges)[0];
    const best = Object.entries(sim.result.best_configuration)
      .map(([k, v]) => `<li>${esc(k)} = ${esc(fmtCell(v as number))}</li>`)
      .join("");
    const warnings = sim.result.extrapolation_warnings
      .map((w) => `<li class="warning">${esc(w)}</li>`)
      .join("");
    resultPanel =
      `<h3>Best configuration (predicted ${esc(sim.model.target)} = ${fmtCell(sim.result.predicted_target)})</h3>` +
      `<ul class="best-config">${best}</ul>` +
      (warnings ? `<ul class="warnings">${warnings}</ul>` : "") +
      `<div class="chart-panel">${renderSimulationChart(feature, sim.result.trace, sim.result.best_configuration, sim.result.predicted_target)}</div>`;
  }

  return (
    `<section class="view-simulation">` +
    `<h2>What-if simulation: ${esc(sim.model.algorithm)} for ${esc(sim.model.target)}</h2>` +
    picker +
    `<form data-action="simulate-form">${sliders}${objective}` +
    `<button type="submit">Run simulation</button></form>` +
    resultPanel +
    `</section>`
  );
}
