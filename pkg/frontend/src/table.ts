/** Design-table view: one row per transformation, numbers verbatim from the
 * service response (the UI never recomputes anything). */

import type { DesignResponse } from './types.js';

export const RECOMMENDED = new Set(['arcsin', 'loglog']);

export interface TableRow {
  kind: string;
  n: string;
  tau1: string;
  achieved_power: string;
  recommended: boolean;
}

export interface TableView {
  rows: TableRow[];
  html: string;
}

function escapeHtml(text: string): string {
  return text.replace(/&/g, '&amp;').replace(/</g, '&lt;').replace(/>/g, '&gt;');
}

export function renderDesignTable(response: DesignResponse): TableView {
  const rows: TableRow[] = response.results.map((r) => ({
    kind: r.kind,
    n: String(r.n),
    tau1: String(r.tau1),
    achieved_power: String(r.achieved_power),
    recommended: RECOMMENDED.has(r.kind),
  }));
  const body = rows
    .map((row) => {
      const cls = row.recommended ? ' class="recommended"' : '';
      const badge = row.recommended ? ' &#9733;' : '';
      return (
        `<tr${cls} data-kind="${escapeHtml(row.kind)}">` +
        `<td>${escapeHtml(row.kind)}${badge}</td>` +
        `<td class="num" data-field="n">${escapeHtml(row.n)}</td>` +
        `<td class="num" data-field="tau1">${escapeHtml(row.tau1)}</td>` +
        `<td class="num" data-field="achieved_power">${escapeHtml(row.achieved_power)}</td>` +
        `</tr>`
      );
    })
    .join('');
  const html =
    '<table class="design-table"><thead><tr>' +
    '<th>transformation</th><th>n</th><th>&tau;&#8321;</th><th>achieved power</th>' +
    `</tr></thead><tbody>${body}</tbody></table>`;
  return { rows, html };
}
