/** Map a fetched preset study onto the design form. */

import type { DesignFormState } from './state.js';
import type { PresetStudy } from './types.js';

export const STUDY_IDS = ['i', 'ii', 'iii'] as const;

export function applyPreset(studyId: string, presets: PresetStudy[]): DesignFormState {
  const study = presets.find((p) => p.study === studyId);
  if (!study) {
    throw new Error(`unknown study '${studyId}'; expected one of ${STUDY_IDS.join(', ')}`);
  }
  return {
    s0: String(study.s0),
    s1: String(study.s1),
    t: String(study.t),
    accrual: String(study.a),
    followup: String(study.b),
    alpha: String(study.alpha),
    power: String(study.power),
    family: 'exponential',
    shape: '1',
    censor_fraction: '0',
    method: 'proposed',
  };
}
