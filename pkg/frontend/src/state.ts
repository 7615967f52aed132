/**
 * ViewState: everything the console renders, derived purely from API
 * responses. No statistic is computed client-side.
 */

import type {
  InsightDoc,
  JobDoc,
  ModelDoc,
  ProjectInfo,
  QueryResponseDoc,
  RecommendationDoc,
  ReportDoc,
  SimulationResultDoc,
  StepResponseDoc,
  TableProfileDoc,
} from "./types.js";

export type Tab = "upload" | "insight" | "ask" | "guidance" | "simulation";

export interface GuidanceState {
  sessionId: string | null;
  settings: Record<string, string>;
  steps: StepResponseDoc[];
  recommendations: RecommendationDoc[];
  proposal: { propose: boolean; reason: string } | null;
  report: ReportDoc | null;
}

export interface SimulationState {
  models: string[];
  model: ModelDoc | null;
  ranges: Record<string, [number, number]>;
  objective: "maximize" | "minimize";
  result: SimulationResultDoc | null;
}

export interface ViewState {
  tab: Tab;
  error: string | null;
  busy: string | null;
  projects: ProjectInfo[];
  projectId: string | null;
  job: JobDoc | null;
  profile: TableProfileDoc | null;
  insight: InsightDoc | null;
  question: string;
  queryResponse: QueryResponseDoc | null;
  pickedCandidate: number;
  guidance: GuidanceState;
  simulation: SimulationState;
}

export function initialState(): ViewState {
  return {
    tab: "upload",
    error: null,
    busy: null,
    projects: [],
    projectId: null,
    job: null,
    profile: null,
    insight: null,
    question: "",
    queryResponse: null,
    pickedCandidate: 0,
    guidance: {
      sessionId: null,
      settings: {},
      steps: [],
      recommendations: [],
      proposal: null,
      report: null,
    },
    simulation: {
      models: [],
      model: null,
      ranges: {},
      objective: "maximize",
      result: null,
    },
  };
}
