/** JSON contract with the design service (see fixtures/golden.json). */

export type Family = 'exponential' | 'weibull';
export type Method = 'proposed' | 'existing';

export interface DesignRequest {
  s0: number;
  s1: number;
  t: number;
  accrual: number;
  followup: number;
  alpha: number;
  power: number;
  family: Family;
  shape: number;
  censor_fraction: number;
  method: Method;
  kinds?: string[];
}

export interface DesignRow {
  kind: string;
  n: number;
  tau0: number;
  tau1: number;
  epsilon: number;
  achieved_power: number;
}

export interface DesignResponse {
  inputs: Record<string, unknown>;
  results: DesignRow[];
  power_curve?: PowerCurve[];
}

export interface CurveSample {
  n: number;
  power: number;
}

export interface PowerCurve {
  kind: string;
  n_design: number;
  samples: CurveSample[];
}

export interface PowerCurveResponse {
  inputs: Record<string, unknown>;
  target_power: number;
  curves: PowerCurve[];
}

export interface PresetStudy {
  study: string;
  s0: number;
  s1: number;
  t: number;
  a: number;
  b: number;
  alpha: number;
  power: number;
}

export interface ApiErrorBody {
  error: string;
  message: string;
}
