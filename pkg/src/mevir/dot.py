"""Static DOT export of an evaluated lattice.

Node labels carry the claim id, its score to three decimals, and the
verdict. Anchor kinds map to node shapes; attack edges are drawn dashed
and red with a tee arrowhead so they read differently from support at a
glance. Output ordering is fixed (nodes then edges, both by id), so the
same inputs always produce the same bytes.
"""

from __future__ import annotations

from .evaluation import EvaluationResult
from .model import TrustLattice

ANCHOR_SHAPES = {
    "belief": "box",
    "pre_trusted": "box3d",
    "authority": "house",
    "evidence_exhausted": "ellipse",
    "resource_exhausted": "octagon",
}

VERDICT_COLORS = {"accepted": "palegreen", "rejected": "lightcoral"}


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def export_dot(lattice: TrustLattice, evaluation: EvaluationResult) -> str:
    lines = [f"digraph {_quote(lattice.id)} {{", "  rankdir=BT;"]
    for nid in sorted(lattice.nodes):
        sigma = evaluation.scores.get(nid, 0.0)
        verdict = evaluation.verdicts.get(nid, "rejected")
        anchor = lattice.anchors.get(nid)
        shape = ANCHOR_SHAPES.get(anchor.kind, "ellipse") if anchor else "ellipse"
        label = f"{nid}\\nσ={sigma:.3f}\\n{verdict}"
        attrs = [
            f"label={_quote(label)}",
            f"shape={shape}",
            "style=filled",
            f"fillcolor={VERDICT_COLORS[verdict]}",
        ]
        if anchor and nid in lattice.disabled_anchors:
            attrs.append("penwidth=0.5")
        lines.append(f"  {_quote(nid)} [{', '.join(attrs)}];")
    source_ids = sorted({
        e.from_id for e in lattice.edges.values() if e.kind == "sourced_from"
    })
    for sid in source_ids:
        lines.append(f"  {_quote(sid)} [label={_quote(sid)}, shape=note, fillcolor=lightgray, style=filled];")
    for eid in sorted(lattice.edges):
        e = lattice.edges[eid]
        attrs = []
        if e.kind == "attacks":
            attrs += ["color=red", "style=dashed", "arrowhead=tee"]
        elif e.kind == "sourced_from":
            attrs += ["color=gray", "style=dotted", "arrowhead=none"]
        if e.id in lattice.disabled_edges:
            attrs.append("penwidth=0.5")
        suffix = f" [{', '.join(attrs)}]" if attrs else ""
        lines.append(f"  {_quote(e.from_id)} -> {_quote(e.to_id)}{suffix};")
    lines.append("}")
    return "\n".join(lines) + "\n"
