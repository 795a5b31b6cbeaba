/** What-if controls: pending overrides against the stored evaluation.
 *
 * Controls start in "stored" mode (no override, nothing sent). Touching a
 * slider marks that control as a pending override; apply POSTs exactly
 * the pending overrides; reset drops them all and the display falls back
 * to the stored evaluation. The workbench never mutates server state from
 * here — the endpoint is the side-effect-free evaluate route.
 */

import { FOUNDATION_NAMES } from "./types.js";
import type { FoundationName, WhatIfOverrides } from "./types.js";
import { escapeHtml } from "./lattice_view.js";

export interface ControlsState {
  foundationWeights: Partial<Record<FoundationName, number>>;
  sourceTrust: Record<string, number>;
  tau?: number;
  lambda?: number;
  error?: { message: string };
}

export function emptyControls(): ControlsState {
  return { foundationWeights: {}, sourceTrust: {} };
}

export function hasPendingOverrides(state: ControlsState): boolean {
  return (
    Object.keys(state.foundationWeights).length > 0 ||
    Object.keys(state.sourceTrust).length > 0 ||
    state.tau !== undefined ||
    state.lambda !== undefined
  );
}

export function setFoundationWeight(state: ControlsState, name: FoundationName, value: number): ControlsState {
  return { ...state, foundationWeights: { ...state.foundationWeights, [name]: value }, error: undefined };
}

export function setSourceTrust(state: ControlsState, sourceId: string, value: number): ControlsState {
  return { ...state, sourceTrust: { ...state.sourceTrust, [sourceId]: value }, error: undefined };
}

export function setTau(state: ControlsState, value: number): ControlsState {
  return { ...state, tau: value, error: undefined };
}

export function setLambda(state: ControlsState, value: number): ControlsState {
  return { ...state, lambda: value, error: undefined };
}

/** Exactly what gets POSTed: only the touched controls. */
export function buildOverrides(state: ControlsState): WhatIfOverrides {
  const overrides: WhatIfOverrides = {};
  if (Object.keys(state.foundationWeights).length > 0) {
    overrides.foundation_weights = { ...state.foundationWeights };
  }
  if (Object.keys(state.sourceTrust).length > 0) {
    overrides.source_trust = { ...state.sourceTrust };
  }
  if (state.tau !== undefined) overrides.tau = state.tau;
  if (state.lambda !== undefined) overrides.lambda = state.lambda;
  return overrides;
}

/** Reset: every control back to stored (no overrides pending). */
export function resetControls(): ControlsState {
  return emptyControls();
}

function slider(kind: string, name: string, value: number | undefined, label: string): string {
  const pending = value !== undefined;
  const shown = pending ? value : 0.5;
  return (
    `<label class="control ${kind}${pending ? " pending" : " stored"}" data-control="${escapeHtml(name)}">` +
    `<span class="control-name">${escapeHtml(label)}</span>` +
    `<input type="range" min="0" max="1" step="0.05" value="${shown}" ` +
    `data-kind="${kind}" data-name="${escapeHtml(name)}"/>` +
    `<span class="control-value">${pending ? shown.toFixed(2) : "stored"}</span>` +
    `</label>`
  );
}

/** Full control panel; sliders carry data-kind/data-name for wiring. */
export function renderControls(state: ControlsState, sourceIds: string[]): string {
  const parts: string[] = ['<div class="whatif-controls">'];
  if (state.error) {
    parts.push(`<div class="control-error">${escapeHtml(state.error.message)}</div>`);
  }
  parts.push('<h3>Foundation weights</h3>');
  for (const name of FOUNDATION_NAMES) {
    parts.push(slider("foundation", name, state.foundationWeights[name], name.replace(/_/g, " ")));
  }
  parts.push('<h3>Source trust</h3>');
  for (const sid of [...sourceIds].sort()) {
    parts.push(slider("source", sid, state.sourceTrust[sid], sid));
  }
  parts.push('<h3>Policy</h3>');
  parts.push(slider("policy", "tau", state.tau, "tau (acceptance threshold)"));
  parts.push(slider("policy", "lambda", state.lambda, "lambda (moral blend)"));
  parts.push(
    `<div class="control-actions">` +
      `<button class="apply" ${hasPendingOverrides(state) ? "" : "disabled"}>Run what-if</button>` +
      `<button class="reset">Reset to stored</button>` +
      `</div>`,
  );
  parts.push("</div>");
  return parts.join("\n");
}
