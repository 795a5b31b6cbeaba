"""Builds a trust lattice from a claim corpus.

Elaboration is a breadth-first evidence search from a target claim. Every
visited claim is first classified against the five anchor conditions;
anchored claims become leaves, everything else is expanded by pulling its
incoming evidence links from the corpus. Shared evidence is merged, so the
result is a lattice rather than a tree. The search is fully deterministic:
the frontier is processed in ascending (depth, claim id) order.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from typing import Optional

from .model import (
    Claim,
    CycleError,
    EvidenceEdge,
    AgentProfile,
    SourceRecord,
    TrustAnchor,
    TrustLattice,
    TrustPolicy,
    validate_lattice,
)


class UnknownClaimError(KeyError):
    pass


@dataclass
class Budget:
    """Search budget in node expansions, not wall-clock time.

    The budget is a trip-wire: once the number of expansions has exceeded
    max_expansions, every remaining frontier node is anchored as
    resource_exhausted instead of being expanded.
    """

    max_expansions: int = 50

    def __post_init__(self):
        if self.max_expansions < 1:
            raise ValueError("max_expansions must be >= 1")


@dataclass
class ClaimCorpus:
    """The searchable evidence space: claims plus declared evidence links
    (argumentative and sourced_from alike)."""

    claims: dict[str, Claim] = field(default_factory=dict)
    links: dict[str, EvidenceEdge] = field(default_factory=dict)

    def __post_init__(self):
        self._close_exclusivity()

    def _close_exclusivity(self):
        """Complete the symmetric closure of mutual exclusivity."""
        extra: dict[str, set[str]] = {}
        for c in self.claims.values():
            for other in c.mutually_exclusive_with:
                if other in self.claims and c.id not in self.claims[other].mutually_exclusive_with:
                    extra.setdefault(other, set()).add(c.id)
        for cid, add in extra.items():
            old = self.claims[cid]
            self.claims[cid] = Claim(
                id=old.id,
                text=old.text,
                topics=old.topics,
                truth_maker_kind=old.truth_maker_kind,
                proxy_kind=old.proxy_kind,
                evidence_kind=old.evidence_kind,
                footprint=old.footprint,
                mutually_exclusive_with=tuple(set(old.mutually_exclusive_with) | add),
            )

    def incoming_evidence(self, claim_id: str) -> list[EvidenceEdge]:
        return sorted(
            (e for e in self.links.values() if e.is_argumentative() and e.to_id == claim_id),
            key=lambda e: e.id,
        )

    def attachments(self, claim_id: str) -> list[EvidenceEdge]:
        return sorted(
            (e for e in self.links.values() if e.kind == "sourced_from" and e.to_id == claim_id),
            key=lambda e: e.id,
        )

    def source_ids_of(self, claim_id: str) -> tuple[str, ...]:
        return tuple(sorted({e.from_id for e in self.attachments(claim_id)}))

    def to_dict(self) -> dict:
        return {
            "claims": [self.claims[k].to_dict() for k in sorted(self.claims)],
            "links": [self.links[k].to_dict() for k in sorted(self.links)],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ClaimCorpus":
        return cls(
            claims={c["id"]: Claim.from_dict(c) for c in d.get("claims", [])},
            links={e["id"]: EvidenceEdge.from_dict(e) for e in d.get("links", [])},
        )


def classify_anchor(
    claim: Claim,
    corpus: ClaimCorpus,
    profile: AgentProfile,
    policy: TrustPolicy,
    sources: dict[str, SourceRecord],
    budget_exceeded: bool,
) -> Optional[TrustAnchor]:
    """Apply the five termination conditions in fixed precedence order.

    Returns None when the claim should be expanded instead. Precedence:
    pre-trusted, then unconditional belief, then accepted authority, then
    resource exhaustion, then evidence exhaustion.
    """
    if claim.id in profile.pretrusted:
        return TrustAnchor(claim.id, "pre_trusted", base_strength=profile.pretrusted[claim.id])
    if claim.id in profile.beliefs:
        return TrustAnchor(claim.id, "belief", base_strength=profile.beliefs[claim.id])
    for sid in corpus.source_ids_of(claim.id):
        src = sources.get(sid)
        if src is not None and src.public_faith:
            return TrustAnchor(claim.id, "authority", source_id=sid)
        trust = profile.trust_in(sid, claim.first_topic())
        if trust is None:
            trust = 0.5
        if trust >= policy.tau:
            return TrustAnchor(claim.id, "authority", source_id=sid)
    if budget_exceeded:
        return TrustAnchor(claim.id, "resource_exhausted")
    if not corpus.incoming_evidence(claim.id):
        return TrustAnchor(claim.id, "evidence_exhausted")
    return None


def elaborate(
    corpus: ClaimCorpus,
    target: str,
    profile: AgentProfile,
    policy: TrustPolicy,
    budget: Budget,
    sources: dict[str, SourceRecord],
    lattice_id: Optional[str] = None,
) -> TrustLattice:
    """Breadth-first elaboration of `target` down to its anchors."""
    if target not in corpus.claims:
        raise UnknownClaimError(f"unknown target claim {target!r}")

    nodes: dict[str, Claim] = {}
    edges: dict[str, EvidenceEdge] = {}
    anchors: dict[str, TrustAnchor] = {}
    expansions = 0
    visited: set[str] = set()
    frontier: list[tuple[int, str]] = [(0, target)]

    while frontier:
        depth, cid = heapq.heappop(frontier)
        if cid in visited:
            continue
        visited.add(cid)
        if cid not in corpus.claims:
            raise UnknownClaimError(f"corpus link references missing claim {cid!r}")
        claim = corpus.claims[cid]
        nodes[cid] = claim
        for att in corpus.attachments(cid):
            edges[att.id] = att

        anchor = classify_anchor(
            claim, corpus, profile, policy, sources,
            budget_exceeded=expansions > budget.max_expansions,
        )
        if anchor is not None:
            anchors[cid] = anchor
            continue

        expansions += 1
        for link in corpus.incoming_evidence(cid):
            edges[link.id] = link
            heapq.heappush(frontier, (depth + 1, link.from_id))

    lattice = TrustLattice(
        id=lattice_id or f"lat-{target}",
        target_claim_id=target,
        nodes=nodes,
        edges=edges,
        anchors=anchors,
    )
    for v in validate_lattice(lattice):
        if v.code == "cycle":
            raise CycleError(v.subject_ids)
    return lattice
