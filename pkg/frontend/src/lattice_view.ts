/** Lattice rendering: verdict-colored, score-sized nodes with anchor
 * glyphs, plus the per-node trace panel.
 *
 * Both renderers are pure string functions over service payloads. Every
 * number shown is read from the payload; nothing is recomputed here, so a
 * test can diff the rendered text against the evaluation document.
 */

import { layoutLattice } from "./layout.js";
import type { Evaluation, LatticePayload, Verdict } from "./types.js";

export const VERDICT_COLORS: Record<Verdict, string> = {
  accepted: "#4caf82",
  rejected: "#e06a6a",
};

const ANCHOR_GLYPHS: Record<string, string> = {
  belief: "■",
  pre_trusted: "◆",
  authority: "▲",
  evidence_exhausted: "○",
  resource_exhausted: "◌",
};

export function escapeHtml(s: string): string {
  return s
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

export function sigmaLabel(sigma: number): string {
  return `σ=${sigma.toFixed(3)}`;
}

export function nodeRadius(sigma: number): number {
  return 14 + sigma * 18;
}

/** SVG of the whole lattice; selectable nodes carry data-node-id. */
export function renderLatticeSvg(payload: LatticePayload, selected?: string): string {
  const { lattice, evaluation } = payload;
  const layout = layoutLattice(lattice);
  const anchorByNode = new Map(lattice.anchors.map((a) => [a.node_id, a]));
  const disabledEdges = new Set(lattice.disabled_edges);
  const parts: string[] = [];

  parts.push(
    `<svg class="lattice" viewBox="0 0 ${layout.width} ${layout.height}" ` +
      `width="${layout.width}" height="${layout.height}" xmlns="http://www.w3.org/2000/svg">`,
  );
  parts.push(
    `<defs><marker id="arrow" viewBox="0 0 10 10" refX="9" refY="5" markerWidth="7" ` +
      `markerHeight="7" orient="auto-start-reverse"><path d="M 0 0 L 10 5 L 0 10 z" fill="#777"/></marker></defs>`,
  );

  const argEdges = lattice.edges
    .filter((e) => e.kind !== "sourced_from")
    .sort((a, b) => a.id.localeCompare(b.id));
  for (const e of argEdges) {
    const from = layout.positions[e.from];
    const to = layout.positions[e.to];
    if (!from || !to) continue;
    const attack = e.kind === "attacks";
    const style = [
      `stroke="${attack ? "#c0392b" : "#8a8a8a"}"`,
      `stroke-width="${attack ? 2 : 1.5}"`,
      attack ? `stroke-dasharray="6 4"` : "",
      disabledEdges.has(e.id) ? `opacity="0.25"` : "",
      `marker-end="url(#arrow)"`,
    ]
      .filter(Boolean)
      .join(" ");
    parts.push(
      `<line class="edge edge-${e.kind}" data-edge-id="${escapeHtml(e.id)}" ` +
        `x1="${from.x}" y1="${from.y}" x2="${to.x}" y2="${to.y}" ${style}/>`,
    );
  }

  const nodeIds = lattice.nodes.map((n) => n.id).sort();
  for (const nid of nodeIds) {
    const pos = layout.positions[nid];
    if (!pos) continue;
    const sigma = evaluation.scores[nid] ?? 0;
    const verdict = evaluation.verdicts[nid] ?? "rejected";
    const radius = nodeRadius(sigma);
    const anchor = anchorByNode.get(nid);
    const glyph = anchor ? (ANCHOR_GLYPHS[anchor.kind] ?? "") : "";
    const ring = nid === lattice.target_claim_id ? `stroke="#222" stroke-width="3"` : `stroke="#555" stroke-width="1"`;
    const selectedClass = nid === selected ? " selected" : "";
    parts.push(
      `<g class="node node-${verdict}${selectedClass}" data-node-id="${escapeHtml(nid)}">` +
        `<circle cx="${pos.x}" cy="${pos.y}" r="${radius}" fill="${VERDICT_COLORS[verdict]}" ${ring}/>` +
        (glyph
          ? `<text class="anchor-glyph" x="${pos.x}" y="${pos.y + 5}" text-anchor="middle" font-size="13">${glyph}</text>`
          : "") +
        `<text class="node-label" x="${pos.x}" y="${pos.y + radius + 16}" text-anchor="middle" font-size="12">${escapeHtml(nid)}</text>` +
        `<text class="node-sigma" x="${pos.x}" y="${pos.y + radius + 31}" text-anchor="middle" font-size="11">${sigmaLabel(sigma)}</text>` +
        `</g>`,
    );
  }
  parts.push("</svg>");
  return parts.join("\n");
}

/** Trace panel for one node: aggregates and per-edge effective weights,
 * straight from the evaluation payload. */
export function renderTracePanel(payload: LatticePayload, nodeId: string): string {
  const { lattice, evaluation } = payload;
  const node = lattice.nodes.find((n) => n.id === nodeId);
  const trace = evaluation.trace[nodeId];
  if (!node || !trace) {
    return `<div class="trace-panel empty">Select a node to inspect its trace.</div>`;
  }
  const sigma = evaluation.scores[nodeId];
  const verdict = evaluation.verdicts[nodeId];
  const rows = Object.entries(trace.edge_weights)
    .sort(([a], [b]) => a.localeCompare(b))
    .map(([eid, w]) => {
      const edge = lattice.edges.find((e) => e.id === eid);
      const via = edge ? `${escapeHtml(edge.from)} —${edge.kind}→` : eid;
      return `<tr><td>${via}</td><td class="edge-weight" data-edge-id="${escapeHtml(eid)}">${w.toFixed(4)}</td></tr>`;
    })
    .join("");
  const anchorLine = trace.anchor
    ? `<p class="anchor-kind">anchored: <b>${escapeHtml(trace.anchor)}</b></p>`
    : `<table class="edge-table"><thead><tr><th>evidence</th><th>effective weight</th></tr></thead><tbody>${rows}</tbody></table>`;
  return (
    `<div class="trace-panel" data-node-id="${escapeHtml(nodeId)}">` +
    `<h3>${escapeHtml(nodeId)}</h3>` +
    `<p class="claim-text">${escapeHtml(node.text)}</p>` +
    `<p class="score">${sigmaLabel(sigma)} → <b class="verdict-${verdict}">${verdict}</b></p>` +
    `<p class="aggregates">support S=<span class="support">${trace.support.toFixed(4)}</span> · ` +
    `attack A=<span class="attack">${trace.attack.toFixed(4)}</span></p>` +
    anchorLine +
    `</div>`
  );
}

/** Side panel listing all verdicts, optionally against a what-if column. */
export function renderVerdictTable(stored: Evaluation, whatIf?: Evaluation): string {
  const ids = Object.keys(stored.verdicts).sort();
  const header = whatIf
    ? `<tr><th>claim</th><th>σ</th><th>stored</th><th>what-if σ</th><th>what-if</th></tr>`
    : `<tr><th>claim</th><th>σ</th><th>stored</th></tr>`;
  const rows = ids
    .map((id) => {
      const s = stored.scores[id];
      const v = stored.verdicts[id];
      let tail = "";
      if (whatIf) {
        const ws = whatIf.scores[id];
        const wv = whatIf.verdicts[id];
        const flipped = wv !== v ? " flipped" : "";
        tail =
          `<td class="whatif-sigma">${ws.toFixed(4)}</td>` +
          `<td class="whatif-verdict${flipped}" data-claim-id="${escapeHtml(id)}">${wv}</td>`;
      }
      return (
        `<tr><td>${escapeHtml(id)}</td><td class="stored-sigma">${s.toFixed(4)}</td>` +
        `<td class="stored-verdict" data-claim-id="${escapeHtml(id)}">${v}</td>${tail}</tr>`
      );
    })
    .join("");
  return `<table class="verdicts">${header}${rows}</table>`;
}
