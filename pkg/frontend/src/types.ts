// Wire types, mirroring the JSON the service emits under /api/v1.

export type DecisionValue = "accepted" | "rejected";

export interface ApplicantBody {
  id?: string;
  name: string;
  income: number;
  loan_amount: number;
  collateral_value: number;
}

export interface RuleFiring {
  rule_index: number;
  alpha: number;
  z_i: number;
}

export interface Assessment {
  applicant_id: string;
  score: number;
  decision: DecisionValue;
  trace: {
    crisp_output: number;
    firings: RuleFiring[];
  };
  clamped_inputs: string[];
}

export interface TermCurve {
  shape: "falling" | "rising";
  x_min: number;
  x_max: number;
}

export interface VariableDoc {
  name: string;
  role: "input" | "output";
  universe: [number, number];
  terms: Record<string, TermCurve>;
}

export interface ConfigDoc {
  version: string;
  variables: VariableDoc[];
  rules: string[];
  threshold: number;
}

export interface SweepPoint {
  value: number;
  score: number;
  decision: DecisionValue;
}

export interface WhatIfRequest {
  applicant: ApplicantBody;
  vary: string;
  steps: number;
}

export interface ApiClient {
  getConfig(): Promise<ConfigDoc>;
  assess(body: ApplicantBody): Promise<Assessment>;
  whatIf(body: WhatIfRequest): Promise<SweepPoint[]>;
}
