/** Layered layout for the lattice DAG.
 *
 * The target claim sits on the top layer; each piece of evidence goes one
 * layer below the deepest claim it feeds. Pure geometry: no scores are
 * computed here, only positions.
 */

import type { Lattice } from "./types.js";

export interface NodePosition {
  x: number;
  y: number;
  layer: number;
}

export interface LayoutResult {
  positions: Record<string, NodePosition>;
  width: number;
  height: number;
}

const H_SPACING = 170;
const V_SPACING = 120;
const MARGIN = 70;

export function layoutLattice(lattice: Lattice): LayoutResult {
  const argEdges = lattice.edges.filter((e) => e.kind !== "sourced_from");
  const parents = new Map<string, string[]>();
  for (const e of argEdges) {
    const list = parents.get(e.from) ?? [];
    list.push(e.to);
    parents.set(e.from, list);
  }

  const layers = new Map<string, number>();
  const nodeIds = lattice.nodes.map((n) => n.id).sort();

  const depthOf = (id: string, seen: Set<string>): number => {
    const known = layers.get(id);
    if (known !== undefined) return known;
    if (seen.has(id)) return 0; // cycles cannot happen in valid lattices
    seen.add(id);
    const ps = parents.get(id) ?? [];
    const depth = ps.length === 0 ? 0 : 1 + Math.max(...ps.map((p) => depthOf(p, seen)));
    layers.set(id, depth);
    return depth;
  };
  for (const id of nodeIds) depthOf(id, new Set());

  const byLayer = new Map<number, string[]>();
  for (const id of nodeIds) {
    const layer = layers.get(id) ?? 0;
    const list = byLayer.get(layer) ?? [];
    list.push(id);
    byLayer.set(layer, list);
  }

  const layerCount = byLayer.size === 0 ? 1 : Math.max(...byLayer.keys()) + 1;
  const widest = Math.max(1, ...[...byLayer.values()].map((l) => l.length));
  const width = MARGIN * 2 + (widest - 1) * H_SPACING;
  const height = MARGIN * 2 + (layerCount - 1) * V_SPACING;

  const positions: Record<string, NodePosition> = {};
  for (const [layer, ids] of [...byLayer.entries()].sort((a, b) => a[0] - b[0])) {
    ids.sort();
    const rowWidth = (ids.length - 1) * H_SPACING;
    const x0 = (width - rowWidth) / 2;
    ids.forEach((id, i) => {
      positions[id] = { x: x0 + i * H_SPACING, y: MARGIN + layer * V_SPACING, layer };
    });
  }
  return { positions, width, height };
}
