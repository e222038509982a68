/** Form state, validation mirroring the service's design invariants, and the
 * lossless mapping between form strings and request numbers. */

import type { DesignRequest, Family, Method } from './types.js';

export interface DesignFormState {
  s0: string;
  s1: string;
  t: string;
  accrual: string;
  followup: string;
  alpha: string;
  power: string;
  family: Family;
  shape: string;
  censor_fraction: string;
  method: Method;
}

export const DEFAULT_STATE: DesignFormState = {
  s0: '0.1',
  s1: '0.2',
  t: '12',
  accrual: '24',
  followup: '12',
  alpha: '0.05',
  power: '0.8',
  family: 'exponential',
  shape: '1',
  censor_fraction: '0',
  method: 'proposed',
};

export type ValidationErrors = Partial<Record<keyof DesignFormState, string>>;

function num(value: string): number {
  return value.trim() === '' ? NaN : Number(value);
}

/** Each message names the violated invariant. */
export function validate(state: DesignFormState): ValidationErrors {
  const errors: ValidationErrors = {};
  const s0 = num(state.s0);
  const s1 = num(state.s1);
  const t = num(state.t);
  const accrual = num(state.accrual);
  const followup = num(state.followup);
  const alpha = num(state.alpha);
  const power = num(state.power);
  const shape = num(state.shape);
  const censor = num(state.censor_fraction);

  if (!(s0 > 0 && s0 < 1)) errors.s0 = 'null survival must lie strictly between 0 and 1';
  if (!(s1 > 0 && s1 < 1)) errors.s1 = 'alternative survival must lie strictly between 0 and 1';
  if (!errors.s0 && !errors.s1 && s0 === s1) errors.s1 = 'null and alternative must differ';
  if (!errors.s0 && !errors.s1 && s1 < s0) {
    errors.s1 = 'superiority design requires the alternative to exceed the null';
  }
  if (!(accrual > 0)) errors.accrual = 'accrual length must be positive';
  if (!(followup > 0)) errors.followup = 'follow-up length must be positive';
  if (!(t > 0)) {
    errors.t = 'analysis time must be positive';
  } else if (accrual > 0 && followup > 0 && !(t < accrual + followup)) {
    errors.t = 'analysis time must precede accrual plus follow-up';
  }
  if (!(alpha > 0 && alpha < 0.5)) errors.alpha = 'one-sided alpha must lie in (0, 0.5)';
  if (!(power > 0.5 && power < 1)) errors.power = 'target power must lie in (0.5, 1)';
  if (!(shape > 0)) errors.shape = 'Weibull shape must be positive';
  if (state.family === 'exponential' && shape !== 1) {
    errors.shape = 'exponential family requires shape 1';
  }
  if (!(censor >= 0 && censor < 1)) {
    errors.censor_fraction = 'random-censoring fraction must lie in [0, 1)';
  }
  return errors;
}

export function isValid(state: DesignFormState): boolean {
  return Object.keys(validate(state)).length === 0;
}

export function toRequest(state: DesignFormState): DesignRequest {
  return {
    s0: num(state.s0),
    s1: num(state.s1),
    t: num(state.t),
    accrual: num(state.accrual),
    followup: num(state.followup),
    alpha: num(state.alpha),
    power: num(state.power),
    family: state.family,
    shape: num(state.shape),
    censor_fraction: num(state.censor_fraction),
    method: state.method,
  };
}

/** Rebuild form state from a request or the inputs echoed by the service. */
export function fromInputs(inputs: Record<string, unknown>): DesignFormState {
  return {
    s0: String(inputs.s0),
    s1: String(inputs.s1),
    t: String(inputs.t),
    accrual: String(inputs.accrual),
    followup: String(inputs.followup),
    alpha: String(inputs.alpha),
    power: String(inputs.power),
    family: inputs.family as Family,
    shape: String(inputs.shape),
    censor_fraction: String(inputs.censor_fraction),
    method: inputs.method as Method,
  };
}
