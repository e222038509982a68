/** Orchestration between form state and the service, DOM-free for testing:
 * invalid states never reach the network, valid ones fetch both the design
 * table and the power curve. */

import type { ApiClient } from './api.js';
import { DesignFormState, toRequest, validate, ValidationErrors } from './state.js';
import type { DesignResponse, PowerCurveResponse } from './types.js';

export type SubmitOutcome =
  | { kind: 'invalid'; errors: ValidationErrors }
  | { kind: 'ok'; design: DesignResponse; curve: PowerCurveResponse };

export async function submitDesign(
  state: DesignFormState,
  client: ApiClient,
): Promise<SubmitOutcome> {
  const errors = validate(state);
  if (Object.keys(errors).length > 0) {
    return { kind: 'invalid', errors };
  }
  const request = toRequest(state);
  const design = await client.sampleSize(request);
  const curve = await client.powerCurve(request);
  return { kind: 'ok', design, curve };
}
