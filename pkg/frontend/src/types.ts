/** Wire formats mirrored from the service API (docs/api.md). */

export interface ColumnProfile {
  name: string;
  ctype: "Numeric" | "Categorical" | "Datetime" | "Boolean" | "Text";
  count: number;
  missing_count: number;
  distinct_count: number;
  numeric_stats: {
    mean: number;
    sample_std: number;
    min: number;
    max: number;
    median: number;
    q1: number;
    q3: number;
    degenerate: boolean;
  } | null;
  categorical_stats: [string, number][] | null;
}

export interface MatrixDoc {
  columns: string[];
  values: (number | null)[][];
}

export interface TableProfileDoc {
  schema: string;
  status: "Pending" | "Ready" | "Failed";
  row_count: number;
  column_profiles: ColumnProfile[];
  correlation: MatrixDoc | null;
  association: MatrixDoc | null;
}

export interface Encoding {
  column: string;
  aggregate: string | null;
}

export interface ChartSpecDoc {
  kind: string;
  x: Encoding;
  y: Encoding | null;
  series: string | null;
  title: string;
}

export interface TableDoc {
  columns: string[];
  rows: (string | number | null)[][];
}

export interface MentionDoc {
  column: string;
  score: number;
  span: [number, number];
}

export interface RestrictionDoc {
  kind: string;
  operand: number | null;
  target_column: string | null;
}

export interface QueryPlanDoc {
  mentions: MentionDoc[];
  restrictions: RestrictionDoc[];
  intention: string;
  confidence: number;
}

export interface MatchResultDoc {
  candidates: QueryPlanDoc[];
}

export interface AnalysisResultDoc {
  plan: QueryPlanDoc;
  chart: ChartSpecDoc;
  tables: Record<string, TableDoc>;
  findings: [string, unknown][];
  insight_text: string;
  followups: string[];
}

export interface HighlightsDoc {
  tokens: string[];
  column: [number, number][];
  restriction: [number, number][];
  intention: [number, number][];
}

export interface QueryResponseDoc {
  match: MatchResultDoc;
  result: AnalysisResultDoc;
  followups: { question: string; rationale: string }[];
  highlights: HighlightsDoc;
}

export interface JobDoc {
  job_id: string;
  kind: string;
  resource_id: string;
  status: "Queued" | "Running" | "Done" | "Failed";
  error: string | null;
  result?: string;
}

export interface InsightDoc {
  subject_summary: string;
  top_questions: { text: string; intention: string; plan: QueryPlanDoc }[];
}

export interface RecommendationDoc {
  question: string;
  plan: QueryPlanDoc;
  rationale: string;
}

export interface SessionCreatedDoc {
  session_id: string;
  status: string;
  settings: Record<string, string>;
  recommendations: RecommendationDoc[];
}

export interface StepResponseDoc {
  result: AnalysisResultDoc;
  recommendations: RecommendationDoc[];
  summary_proposal: { propose: boolean; reason: string };
}

export interface ReportStepDoc {
  index: number;
  question: string;
  plan: QueryPlanDoc;
  chart: ChartSpecDoc;
  findings: [string, unknown][];
  tables: Record<string, TableDoc>;
  insight_text: string;
}

export interface ReportDoc {
  schema: string;
  report_id: string;
  session_id: string;
  settings: Record<string, string>;
  steps: ReportStepDoc[];
  summary_text: string;
}

export interface ModelDoc {
  schema: string;
  model_id: string;
  project_id: string;
  target: string;
  metric: string;
  algorithm: string;
  hyperparameters: Record<string, number>;
  cv_scores: number[];
  selected_score: number;
  feature_ranges: Record<string, (number | string)[]>;
  feature_encoding: {
    numeric: string[];
    datetime: string[];
    categorical: Record<string, string[]>;
  };
  train_row_count: number;
}

export interface SimulationResultDoc {
  best_configuration: Record<string, number | string>;
  predicted_target: number;
  objective: string;
  extrapolation_warnings: string[];
  trace: Record<string, number | string>[];
}

export interface ProjectInfo {
  project_id: string;
  name: string;
  row_count: number | null;
}
