/** Browser wiring: fetch → render → handle events.
 *
 * All trust numbers come from service payloads; this file only moves them
 * between the API client and the pure renderers. Server state is touched
 * exclusively by the explicit revise/reinstate endpoints, which this
 * workbench does not call from the what-if path.
 */

import { ApiClient, ApiError } from "./api.js";
import { renderLatticeSvg, renderTracePanel, renderVerdictTable } from "./lattice_view.js";
import { renderNudgeCards, renderRecommendations } from "./nudges.js";
import {
  ControlsState,
  buildOverrides,
  emptyControls,
  hasPendingOverrides,
  renderControls,
  resetControls,
  setFoundationWeight,
  setLambda,
  setSourceTrust,
  setTau,
} from "./whatif.js";
import type { Evaluation, FoundationName, LatticePayload } from "./types.js";

// same-origin by default; ?api=http://127.0.0.1:8340 points elsewhere
// (the service sends permissive CORS headers)
const apiBase =
  typeof location !== "undefined"
    ? (new URLSearchParams(location.search).get("api") ?? "")
    : "";
const api = new ApiClient(apiBase);

interface AppState {
  latticeId?: string;
  payload?: LatticePayload;
  whatIf?: Evaluation;
  selectedNode?: string;
  controls: ControlsState;
  sessionId?: string;
}

const state: AppState = { controls: emptyControls() };

function el(id: string): HTMLElement {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node;
}

function banner(message: string | null): void {
  const box = el("error-banner");
  if (message === null) {
    box.classList.add("hidden");
    box.textContent = "";
  } else {
    box.classList.remove("hidden");
    box.textContent = message;
  }
}

function sourceIdsOf(payload: LatticePayload): string[] {
  const ids = new Set<string>();
  for (const e of payload.lattice.edges) {
    if (e.kind === "sourced_from") ids.add(e.from);
  }
  for (const a of payload.lattice.anchors) {
    if (a.source_id) ids.add(a.source_id);
  }
  return [...ids].sort();
}

function renderAll(): void {
  if (!state.payload) return;
  el("lattice-box").innerHTML = renderLatticeSvg(state.payload, state.selectedNode);
  el("verdicts-box").innerHTML = renderVerdictTable(state.payload.evaluation, state.whatIf);
  el("trace-box").innerHTML = state.selectedNode
    ? renderTracePanel(state.payload, state.selectedNode)
    : `<div class="trace-panel empty">Select a node to inspect its trace.</div>`;
  el("controls-box").innerHTML = renderControls(state.controls, sourceIdsOf(state.payload));
  wireControls();
  wireNodes();
}

function wireNodes(): void {
  for (const g of el("lattice-box").querySelectorAll<SVGGElement>("g.node")) {
    g.addEventListener("click", () => {
      state.selectedNode = g.dataset.nodeId;
      renderAll();
    });
  }
}

function wireControls(): void {
  const box = el("controls-box");
  for (const input of box.querySelectorAll<HTMLInputElement>("input[type=range]")) {
    input.addEventListener("change", () => {
      const value = Number(input.value);
      const kind = input.dataset.kind;
      const name = input.dataset.name ?? "";
      if (kind === "foundation") {
        state.controls = setFoundationWeight(state.controls, name as FoundationName, value);
      } else if (kind === "source") {
        state.controls = setSourceTrust(state.controls, name, value);
      } else if (name === "tau") {
        state.controls = setTau(state.controls, value);
      } else if (name === "lambda") {
        state.controls = setLambda(state.controls, value);
      }
      renderAll();
    });
  }
  box.querySelector("button.apply")?.addEventListener("click", () => void applyWhatIf());
  box.querySelector("button.reset")?.addEventListener("click", () => {
    state.controls = resetControls();
    state.whatIf = undefined;
    renderAll();
  });
}

async function applyWhatIf(): Promise<void> {
  if (!state.latticeId || !hasPendingOverrides(state.controls)) return;
  try {
    const response = await api.whatIf(state.latticeId, buildOverrides(state.controls));
    state.whatIf = response.result.evaluation;
    banner(null);
  } catch (err) {
    if (err instanceof ApiError) {
      state.controls = { ...state.controls, error: { message: err.message } };
    } else {
      banner(`service unreachable: ${String(err)} — showing last known state`);
    }
  }
  renderAll();
}

async function loadLattice(latticeId: string): Promise<void> {
  try {
    const response = await api.getLattice(latticeId);
    state.latticeId = latticeId;
    state.payload = response.result;
    state.whatIf = undefined;
    state.selectedNode = response.result.lattice.target_claim_id;
    state.controls = emptyControls();
    banner(null);
    el("meta-box").textContent =
      `engine ${response.engineVersion} · bundle ${response.bundleHash.slice(0, 12)} · ` +
      `profile ${response.result.profile} · policy ${response.result.policy}`;
  } catch (err) {
    banner(`service unreachable: ${String(err)} — showing last known state`);
  }
  renderAll();
}

async function loadNudges(): Promise<void> {
  if (!state.sessionId) return;
  try {
    const response = await api.nudges(state.sessionId);
    el("nudges-box").innerHTML = renderNudgeCards(response.result);
    for (const btn of el("nudges-box").querySelectorAll<HTMLButtonElement>("button.recommend-shortcut")) {
      btn.addEventListener("click", () => void loadRecommendations(btn.dataset.topic ?? ""));
    }
    banner(null);
  } catch (err) {
    banner(`service unreachable: ${String(err)} — showing last known state`);
  }
}

async function loadRecommendations(topic: string): Promise<void> {
  try {
    const response = await api.recommend(topic);
    el("recommend-box").innerHTML = renderRecommendations(response.result);
  } catch (err) {
    banner(`service unreachable: ${String(err)}`);
  }
}

async function boot(): Promise<void> {
  try {
    const listing = await api.listLattices();
    const rows = listing.result;
    const picker = el("lattice-picker") as HTMLSelectElement;
    if (rows.length === 0) {
      el("lattice-box").innerHTML =
        `<div class="empty-state">The bundle contains no lattices. Start the service over a bundle ` +
        `with stored states (e.g. <code>mevir serve --bundle vaccine.json</code>) and reload.</div>`;
      return;
    }
    picker.innerHTML = rows
      .map((r) => `<option value="${r.lattice_id}">${r.lattice_id} (${r.node_count} nodes)</option>`)
      .join("");
    picker.addEventListener("change", () => void loadLattice(picker.value));
    const sessionInput = el("session-input") as HTMLInputElement;
    el("session-load").addEventListener("click", () => {
      state.sessionId = sessionInput.value.trim();
      void loadNudges();
    });
    await loadLattice(rows[0].lattice_id);
  } catch (err) {
    banner(`service unreachable: ${String(err)}`);
  }
}

if (typeof document !== "undefined" && document.getElementById("lattice-box")) {
  void boot();
}
