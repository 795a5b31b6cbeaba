"""Belief revision over an evaluated lattice.

Incoming information passes a trust gate first; distrusted sources never
touch the lattice. Trusted information is merged, and if the re-evaluation
accepts two mutually exclusive claims at once, the engine retracts the
cheapest set of elements that restores consistency. Retraction disables
anchors and edges instead of deleting them, so every revision is
reversible: the log keeps full snapshots and `reinstate` restores the
pre-revision lattice exactly.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Optional

from .evaluation import EvaluationResult, clamp01, evaluate
from .model import (
    AgentProfile,
    Claim,
    EvidenceEdge,
    SourceRecord,
    TrustAnchor,
    TrustLattice,
    TrustPolicy,
    validate_lattice,
)
from .moral import MoralLexicon

# Beyond this many candidates the exhaustive subset search gives way to a
# greedy disable-cheapest loop.
EXHAUSTIVE_LIMIT = 16

DISPOSITIONS = ("applied", "gated_out", "no_conflict", "failed", "reversed")


class MergeError(ValueError):
    pass


class RetractionError(ValueError):
    pass


class ReinstateError(ValueError):
    pass


@dataclass
class NewInformation:
    """A claim arriving from an external source, with the edges that tie it
    into the lattice and declared anchors for any new leaves."""

    claim: Claim
    source_id: str
    edges: tuple[EvidenceEdge, ...] = ()
    anchors: tuple[TrustAnchor, ...] = ()

    def to_dict(self) -> dict:
        return {
            "claim": self.claim.to_dict(),
            "source_id": self.source_id,
            "edges": [e.to_dict() for e in self.edges],
            "anchors": [a.to_dict() for a in self.anchors],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "NewInformation":
        return cls(
            claim=Claim.from_dict(d["claim"]),
            source_id=d["source_id"],
            edges=tuple(EvidenceEdge.from_dict(e) for e in d.get("edges", [])),
            anchors=tuple(TrustAnchor.from_dict(a) for a in d.get("anchors", [])),
        )


@dataclass
class RevisionEntry:
    """One event in the epistemic history. Snapshots carry everything needed
    to undo the event without consulting anything else."""

    id: int
    trigger_claim_id: str
    trigger_source_id: str
    disposition: str
    context: str = ""
    retracted_anchors: tuple[TrustAnchor, ...] = ()
    retracted_edges: tuple[EvidenceEdge, ...] = ()
    added_claim: Optional[Claim] = None
    added_edges: tuple[EvidenceEdge, ...] = ()
    added_anchors: tuple[TrustAnchor, ...] = ()
    removed_anchors: tuple[TrustAnchor, ...] = ()
    reversed_entry: Optional[int] = None

    def __post_init__(self):
        if self.disposition not in DISPOSITIONS:
            raise ValueError(f"unknown disposition {self.disposition!r}")

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "trigger": {"claim_id": self.trigger_claim_id, "source_id": self.trigger_source_id},
            "disposition": self.disposition,
            "context": self.context,
            "retracted": {
                "anchors": [a.to_dict() for a in self.retracted_anchors],
                "edges": [e.to_dict() for e in self.retracted_edges],
            },
            "added": {
                "claim": self.added_claim.to_dict() if self.added_claim else None,
                "edges": [e.to_dict() for e in self.added_edges],
                "anchors": [a.to_dict() for a in self.added_anchors],
            },
            "removed": {
                "anchors": [a.to_dict() for a in self.removed_anchors],
            },
            "reversed_entry": self.reversed_entry,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "RevisionEntry":
        retracted = d.get("retracted", {})
        added = d.get("added", {})
        removed = d.get("removed", {})
        return cls(
            id=d["id"],
            trigger_claim_id=d["trigger"]["claim_id"],
            trigger_source_id=d["trigger"]["source_id"],
            disposition=d["disposition"],
            context=d.get("context", ""),
            retracted_anchors=tuple(TrustAnchor.from_dict(a) for a in retracted.get("anchors", [])),
            retracted_edges=tuple(EvidenceEdge.from_dict(e) for e in retracted.get("edges", [])),
            added_claim=Claim.from_dict(added["claim"]) if added.get("claim") else None,
            added_edges=tuple(EvidenceEdge.from_dict(e) for e in added.get("edges", [])),
            added_anchors=tuple(TrustAnchor.from_dict(a) for a in added.get("anchors", [])),
            removed_anchors=tuple(TrustAnchor.from_dict(a) for a in removed.get("anchors", [])),
            reversed_entry=d.get("reversed_entry"),
        )


@dataclass
class EpistemicState:
    """A lattice, its current evaluation, and the revision history."""

    id: str
    lattice: TrustLattice
    evaluation: EvaluationResult
    revision_log: tuple[RevisionEntry, ...] = ()
    profile_id: str = ""
    policy_id: str = ""

    def next_entry_id(self) -> int:
        return max((e.id for e in self.revision_log), default=0) + 1

    def entry(self, entry_id: int) -> Optional[RevisionEntry]:
        for e in self.revision_log:
            if e.id == entry_id:
                return e
        return None

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "profile": self.profile_id,
            "policy": self.policy_id,
            "lattice": self.lattice.to_dict(),
            "revision_log": [e.to_dict() for e in self.revision_log],
        }


def find_contradictions(evaluation: EvaluationResult, lattice: TrustLattice) -> list[tuple[str, str]]:
    """Unordered pairs of mutually exclusive claims that are both accepted."""
    out: set[tuple[str, str]] = set()
    for cid, claim in lattice.nodes.items():
        if evaluation.verdicts.get(cid) != "accepted":
            continue
        for other in claim.mutually_exclusive_with:
            if other in lattice.nodes and evaluation.verdicts.get(other) == "accepted":
                out.add(tuple(sorted((cid, other))))
    return sorted(out)


@dataclass
class Candidate:
    """A retractable element with its entrenchment (resistance to removal)."""

    kind: str  # "anchor" or "edge"
    id: str  # node id for anchors, edge id for edges
    entrenchment: float


def _reachable_into(lattice: TrustLattice, targets: set[str]) -> set[str]:
    """Nodes from which some target is reachable along active argumentative
    edges (targets included)."""
    parents_of: dict[str, list[str]] = {}
    for e in lattice.argument_edges():
        if e.id in lattice.disabled_edges:
            continue
        parents_of.setdefault(e.to_id, []).append(e.from_id)
    seen = set(targets)
    stack = list(targets)
    while stack:
        nid = stack.pop()
        for child in parents_of.get(nid, ()):
            if child not in seen:
                seen.add(child)
                stack.append(child)
    return seen


def retraction_candidates(
    lattice: TrustLattice,
    evaluation: EvaluationResult,
    contradictions: list[tuple[str, str]],
) -> list[Candidate]:
    """All belief/pre-trusted anchors, plus every active edge lying on a
    path into a contradicted claim. Entrenchment is the anchor's strength
    or the edge's current effective weight."""
    contradicted = {cid for pair in contradictions for cid in pair}
    region = _reachable_into(lattice, contradicted)
    out: list[Candidate] = []
    for nid, anchor in sorted(lattice.anchors.items()):
        if nid in lattice.disabled_anchors:
            continue
        if anchor.kind in ("belief", "pre_trusted"):
            out.append(Candidate("anchor", nid, anchor.base_strength))
    for eid, e in sorted(lattice.edges.items()):
        if not e.is_argumentative() or eid in lattice.disabled_edges:
            continue
        if e.to_id in region:
            w = evaluation.trace[e.to_id].edge_weights.get(eid, e.declared_weight)
            out.append(Candidate("edge", eid, w))
    return out


def _with_disabled(lattice: TrustLattice, subset: list[Candidate]) -> TrustLattice:
    new = lattice.copy()
    new.disabled_anchors = tuple(sorted(
        set(new.disabled_anchors) | {c.id for c in subset if c.kind == "anchor"}
    ))
    new.disabled_edges = tuple(sorted(
        set(new.disabled_edges) | {c.id for c in subset if c.kind == "edge"}
    ))
    return new


def minimal_retraction(
    lattice: TrustLattice,
    evaluation: EvaluationResult,
    contradictions: list[tuple[str, str]],
    profile: AgentProfile,
    sources: dict[str, SourceRecord],
    policy: TrustPolicy,
    lexicon: Optional[MoralLexicon] = None,
) -> list[Candidate]:
    """Cheapest set of elements whose disabling restores consistency.

    Up to EXHAUSTIVE_LIMIT candidates the search is exhaustive over
    subsets, ordered by (total entrenchment, element count, id sequence);
    the first subset whose disabling clears every contradiction wins.
    Beyond the limit, a greedy loop disables the cheapest remaining
    candidate until the contradictions clear.
    """
    if not contradictions:
        raise ValueError("minimal_retraction requires at least one contradiction")
    candidates = retraction_candidates(lattice, evaluation, contradictions)

    def clears(subset: list[Candidate]) -> bool:
        trial = _with_disabled(lattice, subset)
        trial_eval = evaluate(trial, profile, sources, policy, lexicon)
        return not find_contradictions(trial_eval, trial)

    if len(candidates) <= EXHAUSTIVE_LIMIT:
        ranked = sorted(
            (
                (
                    sum(c.entrenchment for c in combo),
                    len(combo),
                    tuple(c.id for c in combo),
                    combo,
                )
                for r in range(1, len(candidates) + 1)
                for combo in (
                    list(x) for x in itertools.combinations(
                        sorted(candidates, key=lambda c: c.id), r
                    )
                )
            ),
            key=lambda item: item[:3],
        )
        for _total, _size, _ids, combo in ranked:
            if clears(combo):
                return combo
        raise RetractionError("no candidate subset clears the contradictions")

    chosen: list[Candidate] = []
    remaining = sorted(candidates, key=lambda c: (c.entrenchment, c.id))
    for cand in remaining:
        chosen.append(cand)
        if clears(chosen):
            return chosen
    raise RetractionError("no candidate subset clears the contradictions")


def ingest_trust(
    info: NewInformation,
    profile: AgentProfile,
    sources: dict[str, SourceRecord],
) -> float:
    """Trust in the incoming source, scored like an authority anchor."""
    src = sources.get(info.source_id)
    if src is None:
        raise MergeError(f"new information names unknown source {info.source_id!r}")
    trust = profile.trust_in(info.source_id, info.claim.first_topic())
    if trust is None:
        trust = 0.5
    return clamp01(trust * src.reputation)


def _provenance_edge(info: NewInformation) -> EvidenceEdge:
    return EvidenceEdge(
        id=f"sf-{info.source_id}-{info.claim.id}",
        from_id=info.source_id,
        to_id=info.claim.id,
        kind="sourced_from",
    )


def _merge(lattice: TrustLattice, info: NewInformation) -> tuple[TrustLattice, RevisionEntry]:
    """Merge new information; returns the merged lattice and a partial
    entry recording exactly what changed (for later reversal).

    New evidence arriving at a node whose anchor was mere exhaustion lifts
    that anchor: the search had stopped there for lack of material, and
    material just arrived. Belief, pre-trusted and authority anchors are
    commitments and cannot silently receive evidence; that merge fails.
    """
    new = lattice.copy()
    added_claim = None
    if info.claim.id not in new.nodes:
        new.nodes[info.claim.id] = info.claim
        added_claim = info.claim
    added_edges: list[EvidenceEdge] = []
    removed_anchors: list[TrustAnchor] = []
    for e in info.edges:
        if e.id in new.edges:
            raise MergeError(f"edge id {e.id!r} already present in lattice")
        new.edges[e.id] = e
        added_edges.append(e)
        existing = new.anchors.get(e.to_id)
        if e.is_argumentative() and existing is not None:
            if existing.kind in ("evidence_exhausted", "resource_exhausted"):
                removed_anchors.append(existing)
                del new.anchors[e.to_id]
            else:
                raise MergeError(
                    f"node {e.to_id!r} is anchored as {existing.kind}; it cannot receive evidence"
                )
    prov = _provenance_edge(info)
    if prov.id not in new.edges:
        new.edges[prov.id] = prov
        added_edges.append(prov)
    added_anchors: list[TrustAnchor] = []
    for a in info.anchors:
        if a.node_id in new.anchors:
            raise MergeError(f"node {a.node_id!r} already anchored")
        new.anchors[a.node_id] = a
        added_anchors.append(a)
    violations = validate_lattice(new)
    if violations:
        raise MergeError(
            "merge would break lattice validity: " + "; ".join(v.message for v in violations)
        )
    partial = RevisionEntry(
        id=0,
        trigger_claim_id=info.claim.id,
        trigger_source_id=info.source_id,
        disposition="no_conflict",
        added_claim=added_claim,
        added_edges=tuple(added_edges),
        added_anchors=tuple(added_anchors),
        removed_anchors=tuple(removed_anchors),
    )
    return new, partial


def revise(
    state: EpistemicState,
    info: NewInformation,
    profile: AgentProfile,
    sources: dict[str, SourceRecord],
    policy: TrustPolicy,
    lexicon: Optional[MoralLexicon] = None,
) -> EpistemicState:
    """Trust-gated minimal-change revision. Always returns a new state; the
    log entry's disposition says what actually happened."""
    entry_id = state.next_entry_id()

    if ingest_trust(info, profile, sources) < policy.ingest_threshold:
        entry = RevisionEntry(
            id=entry_id,
            trigger_claim_id=info.claim.id,
            trigger_source_id=info.source_id,
            disposition="gated_out",
            context="source below ingest threshold; information ignored",
        )
        return EpistemicState(
            id=state.id,
            lattice=state.lattice,
            evaluation=state.evaluation,
            revision_log=state.revision_log + (entry,),
            profile_id=state.profile_id,
            policy_id=state.policy_id,
        )

    merged, partial = _merge(state.lattice, info)
    merged_eval = evaluate(merged, profile, sources, policy, lexicon)
    contradictions = find_contradictions(merged_eval, merged)

    if not contradictions:
        entry = RevisionEntry(
            id=entry_id,
            trigger_claim_id=partial.trigger_claim_id,
            trigger_source_id=partial.trigger_source_id,
            disposition="no_conflict",
            context="merged without contradiction",
            added_claim=partial.added_claim,
            added_edges=partial.added_edges,
            added_anchors=partial.added_anchors,
            removed_anchors=partial.removed_anchors,
        )
        return EpistemicState(
            id=state.id,
            lattice=merged,
            evaluation=merged_eval,
            revision_log=state.revision_log + (entry,),
            profile_id=state.profile_id,
            policy_id=state.policy_id,
        )

    try:
        retraction = minimal_retraction(
            merged, merged_eval, contradictions, profile, sources, policy, lexicon
        )
    except RetractionError:
        entry = RevisionEntry(
            id=entry_id,
            trigger_claim_id=partial.trigger_claim_id,
            trigger_source_id=partial.trigger_source_id,
            disposition="failed",
            context="no retraction restores consistency; information not applied",
        )
        return EpistemicState(
            id=state.id,
            lattice=state.lattice,
            evaluation=state.evaluation,
            revision_log=state.revision_log + (entry,),
            profile_id=state.profile_id,
            policy_id=state.policy_id,
        )

    revised = _with_disabled(merged, retraction)
    revised_eval = evaluate(revised, profile, sources, policy, lexicon)
    entry = RevisionEntry(
        id=entry_id,
        trigger_claim_id=partial.trigger_claim_id,
        trigger_source_id=partial.trigger_source_id,
        disposition="applied",
        context="contradiction cleared by minimal retraction",
        retracted_anchors=tuple(
            merged.anchors[c.id] for c in retraction if c.kind == "anchor"
        ),
        retracted_edges=tuple(
            merged.edges[c.id] for c in retraction if c.kind == "edge"
        ),
        added_claim=partial.added_claim,
        added_edges=partial.added_edges,
        added_anchors=partial.added_anchors,
        removed_anchors=partial.removed_anchors,
    )
    return EpistemicState(
        id=state.id,
        lattice=revised,
        evaluation=revised_eval,
        revision_log=state.revision_log + (entry,),
        profile_id=state.profile_id,
        policy_id=state.policy_id,
    )


def reinstate(
    state: EpistemicState,
    revision_id: int,
    profile: AgentProfile,
    sources: dict[str, SourceRecord],
    policy: TrustPolicy,
    lexicon: Optional[MoralLexicon] = None,
) -> EpistemicState:
    """Undo an applied revision: re-enable the retracted elements, remove
    what the triggering information added, and log the reversal."""
    entry = state.entry(revision_id)
    if entry is None:
        raise ReinstateError(f"unknown revision id {revision_id}")
    if entry.disposition != "applied":
        raise ReinstateError(
            f"revision {revision_id} has disposition {entry.disposition!r}; only applied entries can be reinstated"
        )
    for later in state.revision_log:
        if later.disposition == "reversed" and later.reversed_entry == revision_id:
            raise ReinstateError(f"revision {revision_id} was already reinstated")

    new = state.lattice.copy()
    re_enable_anchors = {a.node_id for a in entry.retracted_anchors}
    re_enable_edges = {e.id for e in entry.retracted_edges}
    new.disabled_anchors = tuple(sorted(set(new.disabled_anchors) - re_enable_anchors))
    new.disabled_edges = tuple(sorted(set(new.disabled_edges) - re_enable_edges))

    removed_edge_ids = set()
    for e in entry.added_edges:
        new.edges.pop(e.id, None)
        removed_edge_ids.add(e.id)
    for a in entry.added_anchors:
        new.anchors.pop(a.node_id, None)
    removed_anchor_ids = {a.node_id for a in entry.added_anchors}
    if entry.added_claim is not None:
        new.nodes.pop(entry.added_claim.id, None)
    new.disabled_edges = tuple(sorted(set(new.disabled_edges) - removed_edge_ids))
    new.disabled_anchors = tuple(sorted(set(new.disabled_anchors) - removed_anchor_ids))
    for a in entry.removed_anchors:
        new.anchors[a.node_id] = a

    violations = validate_lattice(new)
    if violations:
        raise ReinstateError(
            "reinstatement would break lattice validity: "
            + "; ".join(v.message for v in violations)
        )
    new_eval = evaluate(new, profile, sources, policy, lexicon)
    reversal = RevisionEntry(
        id=state.next_entry_id(),
        trigger_claim_id=entry.trigger_claim_id,
        trigger_source_id=entry.trigger_source_id,
        disposition="reversed",
        context=f"reinstated elements retracted by revision {revision_id}",
        reversed_entry=revision_id,
    )
    return EpistemicState(
        id=state.id,
        lattice=new,
        evaluation=new_eval,
        revision_log=state.revision_log + (reversal,),
        profile_id=state.profile_id,
        policy_id=state.policy_id,
    )
