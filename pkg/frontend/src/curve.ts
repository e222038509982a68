/** Power-curve view as an SVG string.  Pixel placement is the only
 * arithmetic here; every piece of text (hover titles, axis labels, the
 * target-power label) is a verbatim response value. */

import type { PowerCurveResponse } from './types.js';

const PALETTE: Record<string, string> = {
  identity: '#888888',
  log: '#c0392b',
  loglog: '#8e44ad',
  logit: '#d68910',
  arcsin: '#1a7a4a',
};

export interface CurveMarker {
  kind: string;
  n: number;
  power: number;
  title: string;
}

export interface CurveView {
  svg: string;
  markers: CurveMarker[];
}

const W = 640;
const H = 360;
const PAD = 42;

export function renderPowerCurve(response: PowerCurveResponse): CurveView {
  const allSamples = response.curves.flatMap((c) => c.samples);
  if (allSamples.length === 0) {
    return { svg: '<svg class="power-curve"></svg>', markers: [] };
  }
  const nMin = Math.min(...allSamples.map((s) => s.n));
  const nMax = Math.max(...allSamples.map((s) => s.n));
  const pMin = Math.min(...allSamples.map((s) => s.power), response.target_power);
  const pMax = Math.max(...allSamples.map((s) => s.power), response.target_power);
  const sx = (n: number) => PAD + ((n - nMin) / Math.max(nMax - nMin, 1)) * (W - 2 * PAD);
  const sy = (p: number) => H - PAD - ((p - pMin) / Math.max(pMax - pMin, 1e-12)) * (H - 2 * PAD);

  const parts: string[] = [];
  const yTarget = sy(response.target_power);
  parts.push(
    `<line class="target" x1="${PAD}" y1="${yTarget}" x2="${W - PAD}" y2="${yTarget}" ` +
      `stroke="#333" stroke-dasharray="6 4"><title>target power ${String(response.target_power)}</title></line>`,
  );
  parts.push(
    `<text x="${W - PAD}" y="${yTarget - 6}" text-anchor="end" class="target-label">` +
      `${String(response.target_power)}</text>`,
  );

  const markers: CurveMarker[] = [];
  for (const curve of response.curves) {
    const color = PALETTE[curve.kind] ?? '#2c3e50';
    const points = curve.samples.map((s) => `${sx(s.n)},${sy(s.power)}`).join(' ');
    parts.push(
      `<polyline class="curve" data-kind="${curve.kind}" fill="none" ` +
        `stroke="${color}" stroke-width="1.6" points="${points}"/>`,
    );
    const at = curve.samples.find((s) => s.n === curve.n_design);
    if (at) {
      const title = `${curve.kind}: n=${String(at.n)}, power=${String(at.power)}`;
      markers.push({ kind: curve.kind, n: at.n, power: at.power, title });
      parts.push(
        `<circle class="marker" data-kind="${curve.kind}" cx="${sx(at.n)}" cy="${sy(at.power)}" ` +
          `r="4.5" fill="${color}"><title>${title}</title></circle>`,
      );
    }
    for (const s of curve.samples) {
      parts.push(
        `<circle class="hover" data-kind="${curve.kind}" cx="${sx(s.n)}" cy="${sy(s.power)}" ` +
          `r="7" fill="transparent"><title>${curve.kind}: n=${String(s.n)}, ` +
          `power=${String(s.power)}</title></circle>`,
      );
    }
  }

  // axis labels reuse sample endpoints so every number traces to the response
  parts.push(
    `<text x="${PAD}" y="${H - PAD + 16}" class="axis">${String(nMin)}</text>`,
    `<text x="${W - PAD}" y="${H - PAD + 16}" text-anchor="end" class="axis">${String(nMax)}</text>`,
    `<line x1="${PAD}" y1="${H - PAD}" x2="${W - PAD}" y2="${H - PAD}" stroke="#aaa"/>`,
  );

  const svg =
    `<svg class="power-curve" viewBox="0 0 ${W} ${H}" width="${W}" height="${H}" ` +
    `xmlns="http://www.w3.org/2000/svg">${parts.join('')}</svg>`;
  return { svg, markers };
}
