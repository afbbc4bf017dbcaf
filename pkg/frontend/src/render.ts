// Pure view rendering: state in, HTML string out. Counts and ratios are
// interpolated verbatim; the only arithmetic is the BigInt term estimate.

import { FacetRow } from "./api.js";
import { compareDecimal, termEstimate } from "./bigdec.js";
import { ViewState } from "./state.js";

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

export function formatCount(state: ViewState): string {
  if (state.count === null || state.bound === null) return "";
  return `${state.count} (${state.bound})`;
}

export function boundBadge(bound: string): string {
  return `<span class="badge badge-${bound}">${bound}</span>`;
}

export function sortedFacets(state: ViewState): FacetRow[] {
  const rows = [...state.facets];
  if (state.sortByRatio) {
    rows.sort(
      (a, b) =>
        compareDecimal(b.ratio_true, a.ratio_true) ||
        a.atom.localeCompare(b.atom),
    );
  }
  return rows;
}

export function renderStats(state: ViewState): string {
  const stats = state.stats;
  if (!stats) return "";
  return [
    `<dl class="stats">`,
    `<dt>atoms</dt><dd>${stats.atoms}</dd>`,
    `<dt>rules</dt><dd>${stats.rules}</dd>`,
    `<dt>tight</dt><dd>${stats.tight}</dd>`,
    `<dt>cycles</dt><dd>${stats.cycles} (${escapeHtml(stats.cycle_mode)})</dd>`,
    `<dt>supported models</dt><dd class="count">${escapeHtml(stats.supported_count)}</dd>`,
    `</dl>`,
  ].join("");
}

export function renderTrail(state: ViewState): string {
  if (state.trail.length === 0) {
    return `<span class="trail-empty">no assumptions</span>`;
  }
  const steps = state.trail.map((literal, index) => {
    const stepsBack = state.trail.length - index;
    return (
      `<span class="crumb">${escapeHtml(literal)}` +
      `<button data-undo-steps="${stepsBack}" title="undo to before this step">×</button></span>`
    );
  });
  return steps.join(" › ");
}

export function renderDepthControl(state: ViewState): string {
  const cycles = state.stats?.cycles ?? 0;
  const depth = state.depth;
  const label = depth === null ? "full" : String(depth);
  const terms = termEstimate(cycles, depth);
  return (
    `<label>depth <input type="range" id="depth-slider" min="0" max="${cycles}" ` +
    `value="${depth === null ? cycles : depth}" ${cycles === 0 ? "disabled" : ""}></label>` +
    `<span id="depth-label">${label}</span>` +
    `<label class="full-toggle"><input type="checkbox" id="depth-full" ` +
    `${depth === null ? "checked" : ""}> full</label>` +
    `<span class="term-estimate" title="refinement terms at this depth">~${terms} terms</span>`
  );
}

export function renderFacetTable(state: ViewState): string {
  const rows = sortedFacets(state).map((facet) => {
    const ratio = facet.ratio_true === null ? "–" : facet.ratio_true;
    return (
      `<tr><td class="atom">${escapeHtml(facet.atom)}</td>` +
      `<td class="count">${facet.count_true} ${boundBadge(facet.bound_true)}</td>` +
      `<td class="count">${facet.count_false} ${boundBadge(facet.bound_false)}</td>` +
      `<td class="ratio">${ratio}</td>` +
      `<td><button data-assume="${escapeHtml(facet.atom)}">true</button> ` +
      `<button data-assume="-${escapeHtml(facet.atom)}">false</button></td></tr>`
    );
  });
  return (
    `<table class="facets"><thead><tr>` +
    `<th>atom</th><th>count if true</th><th>count if false</th>` +
    `<th>ratio</th><th>assume</th></tr></thead>` +
    `<tbody>${rows.join("")}</tbody></table>` +
    (state.facetsPending ? `<p class="pending">refreshing…</p>` : "")
  );
}

export function renderTrace(state: ViewState): string {
  if (state.trace.length === 0) return "";
  const rows = state.trace.map(
    (row) =>
      `<tr><td>${row.depth}</td><td class="count">${row.partial}</td>` +
      `<td>${row.evaluated}</td><td>${row.skipped}</td></tr>`,
  );
  return (
    `<details><summary>refinement trace</summary>` +
    `<table class="trace"><thead><tr><th>depth</th><th>partial</th>` +
    `<th>evaluated</th><th>skipped</th></tr></thead>` +
    `<tbody>${rows.join("")}</tbody></table></details>`
  );
}

export function renderView(state: ViewState): string {
  const parts: string[] = [];
  if (state.error) {
    parts.push(`<p class="error">${escapeHtml(state.error)}</p>`);
  }
  if (state.toast) {
    parts.push(`<p class="toast">${escapeHtml(state.toast)}</p>`);
  }
  if (state.stats) {
    parts.push(renderStats(state));
    const headline = formatCount(state);
    const warning = state.warning
      ? ` <span class="warning">${escapeHtml(state.warning)}</span>`
      : "";
    parts.push(
      `<h2 id="count" class="count">${headline ? escapeHtml(headline) : "…"}${warning}</h2>`,
    );
    parts.push(`<div class="depth-control">${renderDepthControl(state)}</div>`);
    parts.push(`<div class="trail">${renderTrail(state)}</div>`);
    parts.push(renderFacetTable(state));
    parts.push(renderTrace(state));
  }
  return parts.join("\n");
}
