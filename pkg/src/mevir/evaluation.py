"""Trust scoring over a lattice.

Anchors get their score directly; every other node combines the scores of
its children through a bounded bipolar rule. For a node with prior v0,
aggregated support S and aggregated attack A (each a probabilistic sum of
per-edge contributions):

    sigma = v0 + (1 - v0) * (S - A)   when S >= A
    sigma = v0 - v0 * (A - S)         otherwise

Per-edge contributions are sigma(child) * effective_weight(edge). The
effective weight folds in three policy levers: the ontological
admissibility veto (an inadmissible proxy zeroes the edge no matter what),
first-match weighting rules over the evidence's source and kinds, and the
moral blend that shifts weight toward content whose foundation footprint
aligns with the agent's own weights.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .foundations import FoundationVector
from .model import (
    AgentProfile,
    Claim,
    EvidenceEdge,
    SourceRecord,
    TrustAnchor,
    TrustLattice,
    TrustPolicy,
    Violation,
    validate_lattice,
)
from .moral import MoralLexicon, compute_footprint, moral_congruence


class InvalidLatticeError(ValueError):
    def __init__(self, violations: list[Violation]):
        self.violations = violations
        super().__init__(
            "invalid lattice: " + "; ".join(v.message for v in violations)
        )


class UnknownSourceError(KeyError):
    pass


def clamp01(x: float) -> float:
    return 0.0 if x < 0.0 else 1.0 if x > 1.0 else x


@dataclass
class NodeTrace:
    """Why a node scored the way it did."""

    support: float = 0.0
    attack: float = 0.0
    edge_weights: dict[str, float] = field(default_factory=dict)
    anchor: Optional[str] = None

    def to_dict(self) -> dict:
        return {
            "support": self.support,
            "attack": self.attack,
            "edge_weights": dict(sorted(self.edge_weights.items())),
            "anchor": self.anchor,
        }


@dataclass
class EvaluationResult:
    scores: dict[str, float]
    verdicts: dict[str, str]
    trace: dict[str, NodeTrace]

    def accepted(self, node_id: str) -> bool:
        return self.verdicts[node_id] == "accepted"

    def to_dict(self, include_trace: bool = True) -> dict:
        d = {
            "scores": dict(sorted(self.scores.items())),
            "verdicts": dict(sorted(self.verdicts.items())),
        }
        if include_trace:
            d["trace"] = {k: self.trace[k].to_dict() for k in sorted(self.trace)}
        return d


def anchor_score(
    anchor: TrustAnchor,
    claim: Claim,
    profile: AgentProfile,
    sources: dict[str, SourceRecord],
    policy: TrustPolicy,
) -> float:
    """Score of an anchored node.

    Beliefs and pre-trusted claims carry their own strength. Authority
    anchors score as agent trust in the source (domain-specific, then
    per-source default, then 0.5) times the source's reputation. Both
    exhaustion kinds score as the policy's uncommitted value.
    """
    if anchor.kind in ("belief", "pre_trusted"):
        return anchor.base_strength
    if anchor.kind == "authority":
        src = sources.get(anchor.source_id)
        if src is None:
            raise UnknownSourceError(f"anchor on {anchor.node_id} names unknown source {anchor.source_id!r}")
        trust = profile.trust_in(anchor.source_id, claim.first_topic())
        if trust is None:
            trust = 0.5
        return clamp01(trust * src.reputation)
    return policy.uncommitted


def admissible(policy: TrustPolicy, truth_maker_kind: Optional[str], proxy_kind: Optional[str]) -> bool:
    """May this proxy kind stand in for that truth-maker kind?

    An absent admissibility entry means everything is admissible, and a
    claim without one of the two tags is never vetoed.
    """
    if truth_maker_kind is None or proxy_kind is None:
        return True
    allowed = policy.admissible_proxies.get(truth_maker_kind)
    if allowed is None:
        return True
    return proxy_kind in allowed


def source_for_rules(
    child_source_ids: tuple[str, ...],
    sources: dict[str, SourceRecord],
) -> Optional[SourceRecord]:
    """The evidence's attached source, first id in canonical order."""
    for sid in sorted(child_source_ids):
        if sid in sources:
            return sources[sid]
    return None


def moral_blend(
    child: Claim,
    profile: AgentProfile,
    policy: TrustPolicy,
    lexicon: Optional[MoralLexicon],
) -> float:
    """(1 - lambda) + lambda * congruence(child footprint, agent weights).

    lambda = 0 short-circuits to exactly 1.0, which keeps evaluation
    bit-for-bit independent of the lexicon and the agent's weights.
    """
    lam = policy.lambda_
    if lam == 0.0:
        return 1.0
    if child.footprint is not None:
        vec = child.footprint
    elif lexicon is not None:
        vec = compute_footprint(child.text, lexicon).vector
    else:
        vec = FoundationVector()
    congruence = moral_congruence(vec, profile.foundation_weights)
    return (1.0 - lam) + lam * congruence


def effective_edge_weight(
    edge: EvidenceEdge,
    child: Claim,
    target: Claim,
    profile: AgentProfile,
    policy: TrustPolicy,
    sources: dict[str, SourceRecord],
    lexicon: Optional[MoralLexicon] = None,
    child_source_ids: tuple[str, ...] = (),
) -> float:
    """Weight an argumentative edge actually exerts under this policy."""
    if not edge.is_argumentative():
        raise ValueError(f"edge {edge.id} is not argumentative")
    if not admissible(policy, target.truth_maker_kind, child.proxy_kind):
        return 0.0
    src = source_for_rules(child_source_ids, sources)
    multiplier = policy.rule_multiplier(child, src)
    blend = moral_blend(child, profile, policy, lexicon)
    return clamp01(edge.declared_weight * multiplier * blend)


def evaluate(
    lattice: TrustLattice,
    profile: AgentProfile,
    sources: dict[str, SourceRecord],
    policy: TrustPolicy,
    lexicon: Optional[MoralLexicon] = None,
) -> EvaluationResult:
    """Score every node, children before parents, and render verdicts.

    Disabled edges contribute nothing; a node whose anchor is disabled is
    scored like any other node (with no active evidence it sits at the
    prior). Aggregation is order-independent, so scores do not depend on
    sibling ordering.
    """
    violations = validate_lattice(lattice)
    if violations:
        raise InvalidLatticeError(violations)

    scores: dict[str, float] = {}
    verdicts: dict[str, str] = {}
    trace: dict[str, NodeTrace] = {}
    v0 = policy.prior

    for nid in lattice.topological_order():
        claim = lattice.nodes[nid]
        anchor = lattice.active_anchor_for(nid)
        if anchor is not None:
            sigma = anchor_score(anchor, claim, profile, sources, policy)
            trace[nid] = NodeTrace(anchor=anchor.kind)
        else:
            keep_support = 1.0
            keep_attack = 1.0
            edge_weights: dict[str, float] = {}
            for e in lattice.active_incoming(nid):
                child = lattice.nodes[e.from_id]
                w = effective_edge_weight(
                    e, child, claim, profile, policy, sources, lexicon,
                    child_source_ids=lattice.sources_of(child.id),
                )
                edge_weights[e.id] = w
                contribution = scores[e.from_id] * w
                if e.kind == "attacks":
                    keep_attack *= 1.0 - contribution
                else:
                    keep_support *= 1.0 - contribution
            support = 1.0 - keep_support
            attack = 1.0 - keep_attack
            if support >= attack:
                sigma = v0 + (1.0 - v0) * (support - attack)
            else:
                sigma = v0 - v0 * (attack - support)
            trace[nid] = NodeTrace(support=support, attack=attack, edge_weights=edge_weights)
        sigma = clamp01(sigma)
        scores[nid] = sigma
        verdicts[nid] = "accepted" if sigma > policy.tau else "rejected"

    return EvaluationResult(scores=scores, verdicts=verdicts, trace=trace)
