import { describe, expect, it } from 'vitest';

import golden from '../fixtures/golden.json';
import { DEFAULT_STATE, fromInputs, isValid, toRequest, validate } from '../src/state.js';

describe('validation', () => {
  it('accepts the default state', () => {
    expect(validate(DEFAULT_STATE)).toEqual({});
    expect(isValid(DEFAULT_STATE)).toBe(true);
  });

  it('names the violated invariant when s0 equals s1', () => {
    const errors = validate({ ...DEFAULT_STATE, s0: '0.3', s1: '0.3' });
    expect(errors.s1).toBe('null and alternative must differ');
  });

  it('rejects inferiority direction', () => {
    const errors = validate({ ...DEFAULT_STATE, s0: '0.4', s1: '0.2' });
    expect(errors.s1).toContain('alternative to exceed the null');
  });

  it('rejects analysis time at or past accrual plus follow-up', () => {
    const errors = validate({ ...DEFAULT_STATE, t: '36' });
    expect(errors.t).toBe('analysis time must precede accrual plus follow-up');
  });

  it('rejects out-of-range probabilities and levels', () => {
    expect(validate({ ...DEFAULT_STATE, s0: '0' }).s0).toBeDefined();
    expect(validate({ ...DEFAULT_STATE, s1: '1' }).s1).toBeDefined();
    expect(validate({ ...DEFAULT_STATE, alpha: '0.6' }).alpha).toBeDefined();
    expect(validate({ ...DEFAULT_STATE, power: '0.4' }).power).toBeDefined();
    expect(validate({ ...DEFAULT_STATE, censor_fraction: '1' }).censor_fraction).toBeDefined();
  });

  it('ties the shape to the exponential family', () => {
    const errors = validate({ ...DEFAULT_STATE, shape: '2' });
    expect(errors.shape).toBe('exponential family requires shape 1');
    expect(validate({ ...DEFAULT_STATE, family: 'weibull', shape: '2' })).toEqual({});
  });

  it('rejects blank numeric fields', () => {
    expect(validate({ ...DEFAULT_STATE, t: '' }).t).toBeDefined();
  });
});

describe('request mapping', () => {
  it('round-trips every golden request through the form', () => {
    for (const pair of golden.sample_size) {
      const state = fromInputs(pair.request);
      expect(validate(state)).toEqual({});
      expect(toRequest(state)).toEqual(pair.request);
    }
  });

  it('round-trips the inputs echoed by the service', () => {
    for (const pair of golden.sample_size) {
      const state = fromInputs(pair.response.inputs);
      expect(toRequest(state)).toEqual(pair.request);
    }
  });
});
