/**
 * DOM wiring: user events map 1:1 onto API calls; state updates only from
 * confirmed responses (no optimistic rendering), then the app re-renders.
 */

import { ApiCallError, ApiClient } from "./api.js";
import { initialState, type Tab, type ViewState } from "./state.js";
import { renderApp } from "./views.js";

const api = new ApiClient("");
let state: ViewState = initialState();

function render(): void {
  const root = document.getElementById("app");
  if (root) root.innerHTML = renderApp(state);
}

function setState(patch: Partial<ViewState>): void {
  state = { ...state, ...patch };
  render();
}

function fail(error: unknown): void {
  const message =
    error instanceof ApiCallError
      ? `${error.body.code}: ${error.body.message}`
      : String(error);
  setState({ error: message, busy: null });
}

async function refreshProjects(): Promise<void> {
  const { projects } = await api.listProjects();
  setState({ projects, error: null });
}

async function pollJob(jobId: string): Promise<void> {
  for (;;) {
    const job = await api.job(jobId);
    setState({ job, error: null });
    if (job.status === "Done" || job.status === "Failed") return;
    await new Promise((resolve) => setTimeout(resolve, 400));
  }
}

async function openProject(projectId: string): Promise<void> {
  const profile = await api.profile(projectId);
  setState({
    projectId,
    profile,
    insight: null,
    queryResponse: null,
    guidance: initialState().guidance,
    error: null,
  });
}

async function uploadFile(file: File): Promise<void> {
  setState({ busy: `uploading ${file.name}` });
  try {
    const { project_id, job_id } = await api.uploadProject(file, file.name);
    setState({ projectId: project_id, busy: "profiling" });
    await pollJob(job_id);
    await openProject(project_id);
    await refreshProjects();
    setState({ busy: null });
  } catch (error) {
    fail(error);
  }
}

async function runQuestion(question: string, candidate = 0): Promise<void> {
  if (!state.projectId) return fail(new Error("open a project first"));
  setState({ busy: "running analysis", tab: "ask", question });
  try {
    const response = await api.query(state.projectId, question, candidate);
    setState({ queryResponse: response, pickedCandidate: candidate, busy: null, error: null });
  } catch (error) {
    fail(error);
  }
}

async function loadInsight(): Promise<void> {
  if (!state.projectId) return fail(new Error("open a project first"));
  setState({ busy: "compiling insight report" });
  try {
    const insight = await api.insight(state.projectId);
    setState({ insight, busy: null, error: null });
  } catch (error) {
    fail(error);
  }
}

async function startSession(form: HTMLElement): Promise<void> {
  if (!state.projectId) return fail(new Error("open a project first"));
  const value = (id: string) =>
    (form.querySelector(`#${id}`) as HTMLInputElement | HTMLSelectElement | null)?.value ?? "";
  try {
    const created = await api.createSession({
      project_id: state.projectId,
      description: value("setting-description"),
      role: value("setting-role") || "general",
      goal: value("setting-goal"),
      target_column: value("setting-target"),
    });
    setState({
      guidance: {
        sessionId: created.session_id,
        settings: created.settings,
        steps: [],
        recommendations: created.recommendations,
        proposal: null,
        report: null,
      },
      error: null,
    });
  } catch (error) {
    fail(error);
  }
}

async function stepSession(body: { question?: string; pick?: number }): Promise<void> {
  const sessionId = state.guidance.sessionId;
  if (!sessionId) return;
  setState({ busy: "executing step" });
  try {
    const step = await api.stepSession(sessionId, body);
    setState({
      guidance: {
        ...state.guidance,
        steps: [...state.guidance.steps, step],
        recommendations: step.recommendations,
        proposal: step.summary_proposal,
      },
      busy: null,
      error: null,
    });
  } catch (error) {
    fail(error);
  }
}

async function summarizeSession(): Promise<void> {
  const sessionId = state.guidance.sessionId;
  if (!sessionId) return;
  try {
    const { report } = await api.summarizeSession(sessionId);
    setState({
      guidance: { ...state.guidance, report, proposal: null },
      error: null,
    });
  } catch (error) {
    fail(error);
  }
}

async function downloadReport(reportId: string): Promise<void> {
  try {
    const markdown = await api.reportMarkdown(reportId);
    const blob = new Blob([markdown], { type: "text/markdown" });
    const link = document.createElement("a");
    link.href = URL.createObjectURL(blob);
    link.download = `${reportId}.md`;
    link.click();
    URL.revokeObjectURL(link.href);
  } catch (error) {
    fail(error);
  }
}

async function loadModel(modelId: string): Promise<void> {
  try {
    const model = await api.model(modelId);
    const ranges: Record<string, [number, number]> = {};
    for (const [feature, range] of Object.entries(model.feature_ranges)) {
      if (typeof range[0] === "number" && typeof range[1] === "number") {
        ranges[feature] = [range[0], range[1]];
      }
    }
    setState({
      simulation: { ...state.simulation, model, ranges, result: null },
      error: null,
    });
  } catch (error) {
    fail(error);
  }
}

async function runSimulation(form: HTMLElement): Promise<void> {
  const model = state.simulation.model;
  if (!model) return;
  const ranges: Record<string, [number, number]> = {};
  form.querySelectorAll<HTMLInputElement>(".range-lo").forEach((lo) => {
    const feature = lo.dataset.feature ?? "";
    const hi = form.querySelector<HTMLInputElement>(
      `.range-hi[data-feature="${feature}"]`,
    );
    ranges[feature] = [Number(lo.value), Number(hi?.value ?? lo.value)];
  });
  const objective =
    form.querySelector<HTMLInputElement>('input[name="objective"]:checked')?.value ??
    "maximize";
  setState({
    busy: "searching configurations",
    simulation: { ...state.simulation, ranges, objective: objective as "maximize" | "minimize" },
  });
  try {
    const result = await api.simulate(model.model_id, {
      ranges,
      objective,
      budget: 300,
    });
    setState({
      simulation: { ...state.simulation, ranges, result },
      busy: null,
      error: null,
    });
  } catch (error) {
    fail(error);
  }
}

function onClick(event: Event): void {
  const target = (event.target as HTMLElement).closest<HTMLElement>("[data-action]");
  if (!target) return;
  const action = target.dataset.action;
  switch (action) {
    case "tab":
      setState({ tab: target.dataset.tab as Tab, error: null });
      break;
    case "open-project":
      void openProject(target.dataset.id ?? "").catch(fail);
      break;
    case "load-insight":
      void loadInsight();
      break;
    case "run-question":
      void runQuestion(target.dataset.question ?? "");
      break;
    case "pick-candidate":
      void runQuestion(state.question, Number(target.dataset.index ?? 0));
      break;
    case "pick-recommendation":
      void stepSession({ pick: Number(target.dataset.index ?? 0) });
      break;
    case "summarize":
      void summarizeSession();
      break;
    case "download-report":
      void downloadReport(target.dataset.id ?? "");
      break;
    default:
      break;
  }
}

function onSubmit(event: Event): void {
  const form = (event.target as HTMLElement).closest<HTMLElement>("[data-action]");
  if (!form) return;
  event.preventDefault();
  switch (form.dataset.action) {
    case "ask-form": {
      const input = form.querySelector<HTMLInputElement>("#question-input");
      void runQuestion(input?.value ?? "");
      break;
    }
    case "session-form":
      void startSession(form);
      break;
    case "model-form": {
      const input = form.querySelector<HTMLInputElement>("#model-input");
      void loadModel(input?.value.trim() ?? "");
      break;
    }
    case "simulate-form":
      void runSimulation(form);
      break;
    default:
      break;
  }
}

function onChange(event: Event): void {
  const input = event.target as HTMLInputElement;
  if (input.id === "file-input" && input.files?.length) {
    void uploadFile(input.files[0]);
  }
}

function onDrop(event: DragEvent): void {
  const zone = (event.target as HTMLElement).closest('[data-action="dropzone"]');
  if (!zone) return;
  event.preventDefault();
  const file = event.dataTransfer?.files?.[0];
  if (file) void uploadFile(file);
}

export function boot(): void {
  document.addEventListener("click", onClick);
  document.addEventListener("submit", onSubmit);
  document.addEventListener("change", onChange);
  document.addEventListener("drop", onDrop);
  document.addEventListener("dragover", (event) => {
    if ((event.target as HTMLElement).closest('[data-action="dropzone"]')) {
      event.preventDefault();
    }
  });
  render();
  void refreshProjects().catch(fail);
}

boot();
