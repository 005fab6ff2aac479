/** Wire types for the cvdrec HTTP API. The UI renders these verbatim;
 * every number and flag shown on screen comes out of one of them. */

export type Category = "low" | "moderate" | "high" | "very_high" | "not_assessed";

export interface AssessResponse {
  /** 13 zero/one flags, index 0 is factor 1. */
  factor: number[];
  bmi: number;
  /** 5 zero/one flags, index 0 is class 1. */
  class: number[];
  sco: boolean;
  cvrisk: number | null;
  category: Category;
  risk_note: string | null;
  warnings: string[];
}

export interface RecommendationBlock {
  factor: number;
  name: string;
  class_no: number;
  utility: number;
  tactical_goal: string;
  information: string;
  explanation: string;
  explanation_source: "fallback" | "generated";
  plan: string;
}

export interface Recommendation {
  engine_version: string;
  catalog_version: string;
  goals: string[];
  category_statement: string;
  blocks: RecommendationBlock[];
  profile: Omit<AssessResponse, "warnings">;
  text: string;
  generated_at?: string;
}

export interface RecommendResponse {
  id: string;
  recommendation: Recommendation;
  warnings: string[];
}

export interface ApiErrorDetail {
  field: string;
  message: string;
}

/** Questionnaire document: answered indicators only, canonical key order. */
export type QuestionnaireDoc = Record<string, number>;
