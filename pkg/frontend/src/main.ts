/** Browser wiring: form binding, preset loading, and render targets. */

import { ApiClient, ApiError } from './api.js';
import { submitDesign } from './app.js';
import { renderPowerCurve } from './curve.js';
import { applyPreset, STUDY_IDS } from './presets.js';
import { DEFAULT_STATE, DesignFormState, validate } from './state.js';
import { renderDesignTable } from './table.js';
import type { PresetStudy } from './types.js';

const FIELDS: (keyof DesignFormState)[] = [
  's0', 's1', 't', 'accrual', 'followup', 'alpha', 'power', 'family', 'shape',
  'censor_fraction', 'method',
];

const client = new ApiClient('');
let presets: PresetStudy[] = [];

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

function readState(): DesignFormState {
  const state = { ...DEFAULT_STATE };
  for (const field of FIELDS) {
    const input = el<HTMLInputElement | HTMLSelectElement>(`field-${field}`);
    (state as Record<string, string>)[field] = input.value;
  }
  return state;
}

function writeState(state: DesignFormState): void {
  for (const field of FIELDS) {
    el<HTMLInputElement | HTMLSelectElement>(`field-${field}`).value = state[field];
  }
}

function showErrors(): boolean {
  const errors = validate(readState());
  for (const field of FIELDS) {
    const slot = document.getElementById(`error-${field}`);
    if (slot) slot.textContent = errors[field] ?? '';
  }
  el<HTMLButtonElement>('submit').disabled = Object.keys(errors).length > 0;
  return Object.keys(errors).length === 0;
}

function banner(message: string): void {
  const node = el<HTMLDivElement>('banner');
  node.textContent = message;
  node.hidden = message === '';
}

async function run(): Promise<void> {
  banner('');
  const state = readState();
  try {
    const outcome = await submitDesign(state, client);
    if (outcome.kind === 'invalid') return;
    el<HTMLDivElement>('table-host').innerHTML = renderDesignTable(outcome.design).html;
    el<HTMLDivElement>('curve-host').innerHTML = renderPowerCurve(outcome.curve).svg;
  } catch (err) {
    if (err instanceof DOMException && err.name === 'AbortError') return;
    banner(err instanceof ApiError ? `${err.code}: ${err.message}`
                                   : 'network failure; service unreachable');
  }
}

function init(): void {
  writeState(DEFAULT_STATE);
  showErrors();
  for (const field of FIELDS) {
    el(`field-${field}`).addEventListener('input', () => {
      client.cancelInFlight();
      showErrors();
    });
  }
  el<HTMLFormElement>('design-form').addEventListener('submit', (event) => {
    event.preventDefault();
    if (showErrors()) void run();
  });
  for (const id of STUDY_IDS) {
    el(`preset-${id}`).addEventListener('click', async () => {
      try {
        if (presets.length === 0) presets = await client.presets();
        writeState(applyPreset(id, presets));
        showErrors();
        void run();
      } catch {
        banner('network failure; could not load presets');
      }
    });
  }
}

init();
