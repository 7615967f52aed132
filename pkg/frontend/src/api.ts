/**
 * Typed client for the tabq service.
 *
 * Every request is validated against DOCUMENTED_ENDPOINTS before it leaves
 * the client and recorded in `traffic`, so tests can assert that no view
 * ever issues an undocumented call.
 */

import type {
  InsightDoc,
  JobDoc,
  ModelDoc,
  ProjectInfo,
  QueryResponseDoc,
  ReportDoc,
  SessionCreatedDoc,
  SimulationResultDoc,
  StepResponseDoc,
  TableProfileDoc,
} from "./types.js";

export interface EndpointRule {
  method: string;
  pattern: RegExp;
}

/** The documented API surface (docs/api.md). Views may call nothing else. */
export const DOCUMENTED_ENDPOINTS: EndpointRule[] = [
  { method: "GET", pattern: /^\/health$/ },
  { method: "POST", pattern: /^\/projects$/ },
  { method: "GET", pattern: /^\/projects$/ },
  { method: "GET", pattern: /^\/projects\/[^/]+\/profile$/ },
  { method: "GET", pattern: /^\/projects\/[^/]+\/insight$/ },
  { method: "POST", pattern: /^\/projects\/[^/]+\/query$/ },
  { method: "GET", pattern: /^\/jobs\/[^/]+$/ },
  { method: "POST", pattern: /^\/sessions$/ },
  { method: "POST", pattern: /^\/sessions\/[^/]+\/step$/ },
  { method: "POST", pattern: /^\/sessions\/[^/]+\/summary$/ },
  { method: "POST", pattern: /^\/projects\/[^/]+\/models$/ },
  { method: "GET", pattern: /^\/models\/[^/]+$/ },
  { method: "POST", pattern: /^\/models\/[^/]+\/simulate$/ },
  { method: "POST", pattern: /^\/models\/[^/]+\/stream$/ },
  { method: "GET", pattern: /^\/reports\/[^/]+$/ },
];

export interface ApiError {
  code: string;
  message: string;
  detail?: unknown;
}

export class ApiCallError extends Error {
  constructor(public status: number, public body: ApiError) {
    super(`${body.code}: ${body.message}`);
  }
}

export interface TrafficEntry {
  method: string;
  path: string;
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiClient {
  readonly traffic: TrafficEntry[] = [];

  constructor(
    private baseUrl: string = "",
    private fetchImpl: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private guard(method: string, path: string): void {
    const allowed = DOCUMENTED_ENDPOINTS.some(
      (rule) => rule.method === method && rule.pattern.test(path),
    );
    if (!allowed) {
      throw new Error(`undocumented API call: ${method} ${path}`);
    }
    this.traffic.push({ method, path });
  }

  private async request<T>(
    method: string,
    path: string,
    init: RequestInit = {},
  ): Promise<T> {
    this.guard(method, path);
    const response = await this.fetchImpl(this.baseUrl + path, { method, ...init });
    if (!response.ok) {
      const body = (await response.json().catch(() => ({
        code: "HTTP_" + response.status,
        message: response.statusText,
      }))) as ApiError;
      throw new ApiCallError(response.status, body);
    }
    return (await response.json()) as T;
  }

  private json<T>(method: string, path: string, payload: unknown): Promise<T> {
    return this.request<T>(method, path, {
      headers: { "content-type": "application/json" },
      body: JSON.stringify(payload),
    });
  }

  health(): Promise<{ status: string }> {
    return this.request("GET", "/health");
  }

  uploadProject(file: File | Blob, name: string): Promise<{ project_id: string; job_id: string }> {
    const form = new FormData();
    form.append("file", file, name);
    return this.request("POST", "/projects", { body: form });
  }

  listProjects(): Promise<{ projects: ProjectInfo[] }> {
    return this.request("GET", "/projects");
  }

  profile(projectId: string): Promise<TableProfileDoc> {
    return this.request("GET", `/projects/${projectId}/profile`);
  }

  insight(projectId: string): Promise<InsightDoc> {
    return this.request("GET", `/projects/${projectId}/insight`);
  }

  query(projectId: string, question: string, candidate = 0): Promise<QueryResponseDoc> {
    return this.json("POST", `/projects/${projectId}/query`, { question, candidate });
  }

  job(jobId: string): Promise<JobDoc> {
    return this.request("GET", `/jobs/${jobId}`);
  }

  createSession(payload: {
    project_id: string;
    description?: string;
    role?: string;
    goal?: string;
    target_column: string;
  }): Promise<SessionCreatedDoc> {
    return this.json("POST", "/sessions", payload);
  }

  stepSession(
    sessionId: string,
    body: { question?: string; pick?: number },
  ): Promise<StepResponseDoc> {
    return this.json("POST", `/sessions/${sessionId}/step`, body);
  }

  summarizeSession(sessionId: string): Promise<{ report_id: string; report: ReportDoc }> {
    return this.json("POST", `/sessions/${sessionId}/summary`, {});
  }

  trainModel(
    projectId: string,
    body: { target: string; metric?: string; budget?: string },
  ): Promise<{ job_id: string }> {
    return this.json("POST", `/projects/${projectId}/models`, body);
  }

  model(modelId: string): Promise<ModelDoc> {
    return this.request("GET", `/models/${modelId}`);
  }

  simulate(
    modelId: string,
    body: {
      ranges?: Record<string, [number, number]>;
      fixed?: Record<string, number | string>;
      objective?: string;
      budget?: number;
    },
  ): Promise<SimulationResultDoc> {
    return this.json("POST", `/models/${modelId}/simulate`, body);
  }

  streamRows(modelId: string, rows: Record<string, unknown>[]): Promise<ModelDoc> {
    return this.json("POST", `/models/${modelId}/stream`, { rows });
  }

  report(reportId: string): Promise<ReportDoc> {
    return this.request("GET", `/reports/${reportId}`);
  }

  async reportMarkdown(reportId: string): Promise<string> {
    this.guard("GET", `/reports/${reportId}`);
    const response = await this.fetchImpl(`${this.baseUrl}/reports/${reportId}`, {
      method: "GET",
      headers: { accept: "text/markdown" },
    });
    if (!response.ok) {
      throw new ApiCallError(response.status, {
        code: "HTTP_" + response.status,
        message: response.statusText,
      });
    }
    return response.text();
  }
}
