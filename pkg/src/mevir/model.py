"""Shared domain types: claims, edges, anchors, lattices, profiles, sources,
policies — plus structural validation for lattices.

All types are plain dataclasses treated as immutable values after
construction; every mutation in the engine builds a new value. Collections
are normalized to sorted tuples at construction so equality and canonical
serialization are deterministic.
"""

from __future__ import annotations

import copy
import heapq
import math
from dataclasses import dataclass, field
from typing import Optional

from .foundations import FoundationVector

EVIDENCE_KINDS = ("statistical", "anecdotal", "testimonial", "official_record", "opinion")
EDGE_KINDS = ("supports", "attacks", "evidence_for", "sourced_from")
ANCHOR_KINDS = ("belief", "authority", "pre_trusted", "evidence_exhausted", "resource_exhausted")
SOURCE_KINDS = ("individual_expert", "institution", "media", "government", "crowd", "anonymous")

# Edge kinds that carry evidential force and must form a DAG.
ARGUMENT_EDGE_KINDS = ("supports", "attacks", "evidence_for")


def _check_unit(value: float, what: str) -> float:
    if not isinstance(value, (int, float)) or not math.isfinite(value):
        raise ValueError(f"{what} must be a finite number, got {value!r}")
    if not 0.0 <= value <= 1.0:
        raise ValueError(f"{what} out of [0,1]: {value}")
    return float(value)


def _norm_tags(tags) -> tuple[str, ...]:
    return tuple(sorted(set(tags or ())))


@dataclass
class Claim:
    """A truth bearer: something that can be accepted or rejected."""

    id: str
    text: str = ""
    topics: tuple[str, ...] = ()
    truth_maker_kind: Optional[str] = None
    proxy_kind: Optional[str] = None
    evidence_kind: str = "opinion"
    footprint: Optional[FoundationVector] = None
    mutually_exclusive_with: tuple[str, ...] = ()

    def __post_init__(self):
        if not self.id:
            raise ValueError("claim id must be non-empty")
        self.topics = _norm_tags(self.topics)
        self.mutually_exclusive_with = _norm_tags(self.mutually_exclusive_with)
        if self.evidence_kind not in EVIDENCE_KINDS:
            raise ValueError(f"claim {self.id}: unknown evidence_kind {self.evidence_kind!r}")

    def first_topic(self) -> Optional[str]:
        """First topic in canonical (sorted) order; selects trust domains."""
        return self.topics[0] if self.topics else None

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "text": self.text,
            "topics": list(self.topics),
            "truth_maker_kind": self.truth_maker_kind,
            "proxy_kind": self.proxy_kind,
            "evidence_kind": self.evidence_kind,
            "footprint": self.footprint.to_dict() if self.footprint else None,
            "mutually_exclusive_with": list(self.mutually_exclusive_with),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Claim":
        fp = d.get("footprint")
        return cls(
            id=d["id"],
            text=d.get("text", ""),
            topics=tuple(d.get("topics", ())),
            truth_maker_kind=d.get("truth_maker_kind"),
            proxy_kind=d.get("proxy_kind"),
            evidence_kind=d.get("evidence_kind", "opinion"),
            footprint=FoundationVector.from_dict(fp) if fp else None,
            mutually_exclusive_with=tuple(d.get("mutually_exclusive_with", ())),
        )


@dataclass
class EvidenceEdge:
    """Directed edge from the evidence (child) to its target.

    For sourced_from edges the `from` position holds a source id and
    declared_weight is ignored.
    """

    id: str
    from_id: str
    to_id: str
    kind: str
    declared_weight: float = 1.0

    def __post_init__(self):
        if not self.id:
            raise ValueError("edge id must be non-empty")
        if self.kind not in EDGE_KINDS:
            raise ValueError(f"edge {self.id}: unknown kind {self.kind!r}")
        if self.from_id == self.to_id:
            raise ValueError(f"edge {self.id}: from and to must differ")
        self.declared_weight = _check_unit(self.declared_weight, f"edge {self.id} declared_weight")

    def is_argumentative(self) -> bool:
        return self.kind in ARGUMENT_EDGE_KINDS

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "from": self.from_id,
            "to": self.to_id,
            "kind": self.kind,
            "declared_weight": self.declared_weight,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "EvidenceEdge":
        return cls(
            id=d["id"],
            from_id=d["from"],
            to_id=d["to"],
            kind=d["kind"],
            declared_weight=d.get("declared_weight", 1.0),
        )


@dataclass
class TrustAnchor:
    """A node that terminates the evidence search for the agent."""

    node_id: str
    kind: str
    source_id: Optional[str] = None
    base_strength: Optional[float] = None

    def __post_init__(self):
        if self.kind not in ANCHOR_KINDS:
            raise ValueError(f"anchor on {self.node_id}: unknown kind {self.kind!r}")
        if self.kind == "authority" and not self.source_id:
            raise ValueError(f"authority anchor on {self.node_id} requires source_id")
        if self.kind in ("belief", "pre_trusted"):
            if self.base_strength is None:
                raise ValueError(f"{self.kind} anchor on {self.node_id} requires base_strength")
            self.base_strength = _check_unit(self.base_strength, f"anchor {self.node_id} base_strength")
        elif self.base_strength is not None:
            self.base_strength = _check_unit(self.base_strength, f"anchor {self.node_id} base_strength")

    def to_dict(self) -> dict:
        return {
            "node_id": self.node_id,
            "kind": self.kind,
            "source_id": self.source_id,
            "base_strength": self.base_strength,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "TrustAnchor":
        return cls(
            node_id=d["node_id"],
            kind=d["kind"],
            source_id=d.get("source_id"),
            base_strength=d.get("base_strength"),
        )


@dataclass
class TrustLattice:
    """The belief architecture an agent holds about one target claim.

    Nodes, edges and anchors are keyed by id. Disabled ids mark elements a
    revision switched off without deleting them; they stay part of the
    structure (and of validation) but carry no force during evaluation.
    """

    id: str
    target_claim_id: str
    nodes: dict[str, Claim] = field(default_factory=dict)
    edges: dict[str, EvidenceEdge] = field(default_factory=dict)
    anchors: dict[str, TrustAnchor] = field(default_factory=dict)
    disabled_edges: tuple[str, ...] = ()
    disabled_anchors: tuple[str, ...] = ()

    def __post_init__(self):
        self.disabled_edges = _norm_tags(self.disabled_edges)
        self.disabled_anchors = _norm_tags(self.disabled_anchors)

    # -- structure helpers -------------------------------------------------

    def argument_edges(self) -> list[EvidenceEdge]:
        return [e for e in self.edges.values() if e.is_argumentative()]

    def incoming(self, node_id: str) -> list[EvidenceEdge]:
        """Argumentative edges pointing at node_id, in edge-id order."""
        return sorted(
            (e for e in self.argument_edges() if e.to_id == node_id),
            key=lambda e: e.id,
        )

    def active_incoming(self, node_id: str) -> list[EvidenceEdge]:
        return [e for e in self.incoming(node_id) if e.id not in self.disabled_edges]

    def anchor_for(self, node_id: str) -> Optional[TrustAnchor]:
        return self.anchors.get(node_id)

    def active_anchor_for(self, node_id: str) -> Optional[TrustAnchor]:
        if node_id in self.disabled_anchors:
            return None
        return self.anchors.get(node_id)

    @property
    def provenance(self) -> dict[str, tuple[str, ...]]:
        """node id -> sorted source ids, from sourced_from edges."""
        out: dict[str, list[str]] = {}
        for e in self.edges.values():
            if e.kind == "sourced_from":
                out.setdefault(e.to_id, []).append(e.from_id)
        return {k: tuple(sorted(v)) for k, v in sorted(out.items())}

    def sources_of(self, node_id: str) -> tuple[str, ...]:
        return self.provenance.get(node_id, ())

    def copy(self) -> "TrustLattice":
        return copy.deepcopy(self)

    def topological_order(self) -> list[str]:
        """Node ids, children before parents, ties broken by id.

        Raises CycleError when the argumentative subgraph is cyclic.
        """
        order = _topological_sort(self.nodes.keys(), self.argument_edges())
        if order is None:
            raise CycleError(sorted(_find_cycle_nodes(self.nodes.keys(), self.argument_edges())))
        return order

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "target_claim_id": self.target_claim_id,
            "nodes": [self.nodes[k].to_dict() for k in sorted(self.nodes)],
            "edges": [self.edges[k].to_dict() for k in sorted(self.edges)],
            "anchors": [self.anchors[k].to_dict() for k in sorted(self.anchors)],
            "disabled_edges": list(self.disabled_edges),
            "disabled_anchors": list(self.disabled_anchors),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "TrustLattice":
        nodes = {c["id"]: Claim.from_dict(c) for c in d.get("nodes", [])}
        edges = {e["id"]: EvidenceEdge.from_dict(e) for e in d.get("edges", [])}
        anchors = {a["node_id"]: TrustAnchor.from_dict(a) for a in d.get("anchors", [])}
        return cls(
            id=d["id"],
            target_claim_id=d["target_claim_id"],
            nodes=nodes,
            edges=edges,
            anchors=anchors,
            disabled_edges=tuple(d.get("disabled_edges", ())),
            disabled_anchors=tuple(d.get("disabled_anchors", ())),
        )


@dataclass
class AgentProfile:
    """What one agent brings to evaluation: moral weights, unconditional
    beliefs, previously settled claims, and per-source trust."""

    id: str
    foundation_weights: FoundationVector = field(default_factory=FoundationVector)
    beliefs: dict[str, float] = field(default_factory=dict)
    pretrusted: dict[str, float] = field(default_factory=dict)
    source_trust: dict[str, dict[str, float]] = field(default_factory=dict)
    competence_domains: tuple[str, ...] = ()
    bias_dispositions: tuple[str, ...] = ()

    def __post_init__(self):
        if not self.id:
            raise ValueError("profile id must be non-empty")
        for cid, v in self.beliefs.items():
            self.beliefs[cid] = _check_unit(v, f"profile {self.id} belief {cid}")
        for cid, v in self.pretrusted.items():
            self.pretrusted[cid] = _check_unit(v, f"profile {self.id} pretrusted {cid}")
        overlap = set(self.beliefs) & set(self.pretrusted)
        if overlap:
            raise ValueError(
                f"profile {self.id}: claims in both beliefs and pretrusted: {sorted(overlap)}"
            )
        for sid, entry in self.source_trust.items():
            for domain, v in entry.items():
                entry[domain] = _check_unit(v, f"profile {self.id} trust {sid}/{domain}")
        self.competence_domains = _norm_tags(self.competence_domains)
        self.bias_dispositions = _norm_tags(self.bias_dispositions)

    def trust_in(self, source_id: str, topic: Optional[str]) -> Optional[float]:
        """Stored trust for (source, topic), falling back to the per-source
        default. None when the profile says nothing about the source."""
        entry = self.source_trust.get(source_id)
        if entry is None:
            return None
        if topic is not None and topic in entry:
            return entry[topic]
        return entry.get("default")

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "foundation_weights": self.foundation_weights.to_dict(),
            "beliefs": dict(sorted(self.beliefs.items())),
            "pretrusted": dict(sorted(self.pretrusted.items())),
            "source_trust": {
                sid: dict(sorted(entry.items()))
                for sid, entry in sorted(self.source_trust.items())
            },
            "competence_domains": list(self.competence_domains),
            "bias_dispositions": list(self.bias_dispositions),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "AgentProfile":
        return cls(
            id=d["id"],
            foundation_weights=FoundationVector.from_dict(d.get("foundation_weights", {})),
            beliefs=dict(d.get("beliefs", {})),
            pretrusted=dict(d.get("pretrusted", {})),
            source_trust={k: dict(v) for k, v in d.get("source_trust", {}).items()},
            competence_domains=tuple(d.get("competence_domains", ())),
            bias_dispositions=tuple(d.get("bias_dispositions", ())),
        )


@dataclass
class SourceRecord:
    """Metadata about an epistemic authority."""

    id: str
    name: str = ""
    kind: str = "anonymous"
    expertise_domains: tuple[str, ...] = ()
    leaning: float = 0.0
    reputation: float = 0.5
    funding: str = ""
    public_faith: bool = False

    def __post_init__(self):
        if not self.id:
            raise ValueError("source id must be non-empty")
        if self.kind not in SOURCE_KINDS:
            raise ValueError(f"source {self.id}: unknown kind {self.kind!r}")
        self.expertise_domains = _norm_tags(self.expertise_domains)
        if not isinstance(self.leaning, (int, float)) or not math.isfinite(self.leaning):
            raise ValueError(f"source {self.id}: leaning must be finite")
        if not -1.0 <= self.leaning <= 1.0:
            raise ValueError(f"source {self.id}: leaning out of [-1,1]: {self.leaning}")
        self.leaning = float(self.leaning)
        self.reputation = _check_unit(self.reputation, f"source {self.id} reputation")

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "name": self.name,
            "kind": self.kind,
            "expertise_domains": list(self.expertise_domains),
            "leaning": self.leaning,
            "reputation": self.reputation,
            "funding": self.funding,
            "public_faith": self.public_faith,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "SourceRecord":
        return cls(
            id=d["id"],
            name=d.get("name", ""),
            kind=d.get("kind", "anonymous"),
            expertise_domains=tuple(d.get("expertise_domains", ())),
            leaning=d.get("leaning", 0.0),
            reputation=d.get("reputation", 0.5),
            funding=d.get("funding", ""),
            public_faith=d.get("public_faith", False),
        )


@dataclass
class WeightRule:
    """First-match evidence weighting rule.

    All present predicates must hold (conjunction); matching is evaluated
    against the evidence claim and its attached source, if any. Rules with
    source predicates never match unsourced claims.
    """

    multiplier: float = 1.0
    source_kind: Optional[str] = None
    leaning: Optional[tuple[float, float]] = None
    reputation: Optional[tuple[float, float]] = None
    evidence_kind: Optional[str] = None
    proxy_kind: Optional[str] = None

    def __post_init__(self):
        if not isinstance(self.multiplier, (int, float)) or not math.isfinite(self.multiplier):
            raise ValueError("rule multiplier must be finite")
        if not 0.0 <= self.multiplier <= 2.0:
            raise ValueError(f"rule multiplier out of [0,2]: {self.multiplier}")
        self.multiplier = float(self.multiplier)
        if self.source_kind is not None and self.source_kind not in SOURCE_KINDS:
            raise ValueError(f"rule source_kind unknown: {self.source_kind!r}")
        for name in ("leaning", "reputation"):
            rng = getattr(self, name)
            if rng is not None:
                lo, hi = rng
                if lo > hi:
                    raise ValueError(f"rule {name} range inverted: {rng}")
                setattr(self, name, (float(lo), float(hi)))

    def matches(self, claim: Claim, source: Optional[SourceRecord]) -> bool:
        if self.source_kind is not None:
            if source is None or source.kind != self.source_kind:
                return False
        if self.leaning is not None:
            if source is None or not self.leaning[0] <= source.leaning <= self.leaning[1]:
                return False
        if self.reputation is not None:
            if source is None or not self.reputation[0] <= source.reputation <= self.reputation[1]:
                return False
        if self.evidence_kind is not None and claim.evidence_kind != self.evidence_kind:
            return False
        if self.proxy_kind is not None and claim.proxy_kind != self.proxy_kind:
            return False
        return True

    def to_dict(self) -> dict:
        d: dict = {"multiplier": self.multiplier}
        if self.source_kind is not None:
            d["source_kind"] = self.source_kind
        if self.leaning is not None:
            d["leaning"] = list(self.leaning)
        if self.reputation is not None:
            d["reputation"] = list(self.reputation)
        if self.evidence_kind is not None:
            d["evidence_kind"] = self.evidence_kind
        if self.proxy_kind is not None:
            d["proxy_kind"] = self.proxy_kind
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "WeightRule":
        return cls(
            multiplier=d.get("multiplier", 1.0),
            source_kind=d.get("source_kind"),
            leaning=tuple(d["leaning"]) if d.get("leaning") is not None else None,
            reputation=tuple(d["reputation"]) if d.get("reputation") is not None else None,
            evidence_kind=d.get("evidence_kind"),
            proxy_kind=d.get("proxy_kind"),
        )


@dataclass
class TrustPolicy:
    """Agent- or group-specific rules for scoring and accepting claims."""

    id: str
    tau: float = 0.5
    prior: float = 0.5
    uncommitted: float = 0.5
    lambda_: float = 0.5
    ingest_threshold: float = 0.3
    weight_rules: tuple[WeightRule, ...] = ()
    admissible_proxies: dict[str, tuple[str, ...]] = field(default_factory=dict)
    heuristic_thresholds: dict[str, float] = field(default_factory=dict)

    def __post_init__(self):
        if not self.id:
            raise ValueError("policy id must be non-empty")
        self.tau = _check_unit(self.tau, f"policy {self.id} tau")
        self.prior = _check_unit(self.prior, f"policy {self.id} prior")
        self.uncommitted = _check_unit(self.uncommitted, f"policy {self.id} uncommitted")
        self.lambda_ = _check_unit(self.lambda_, f"policy {self.id} lambda")
        self.ingest_threshold = _check_unit(self.ingest_threshold, f"policy {self.id} ingest_threshold")
        self.weight_rules = tuple(self.weight_rules)
        self.admissible_proxies = {
            k: tuple(sorted(set(v))) for k, v in self.admissible_proxies.items()
        }

    def rule_multiplier(self, claim: Claim, source: Optional[SourceRecord]) -> float:
        """First matching rule wins; no match means 1.0."""
        for rule in self.weight_rules:
            if rule.matches(claim, source):
                return rule.multiplier
        return 1.0

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "tau": self.tau,
            "prior": self.prior,
            "uncommitted": self.uncommitted,
            "lambda": self.lambda_,
            "ingest_threshold": self.ingest_threshold,
            "weight_rules": [r.to_dict() for r in self.weight_rules],
            "admissible_proxies": {
                k: list(v) for k, v in sorted(self.admissible_proxies.items())
            },
            "heuristic_thresholds": dict(sorted(self.heuristic_thresholds.items())),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "TrustPolicy":
        return cls(
            id=d["id"],
            tau=d.get("tau", 0.5),
            prior=d.get("prior", 0.5),
            uncommitted=d.get("uncommitted", 0.5),
            lambda_=d.get("lambda", 0.5),
            ingest_threshold=d.get("ingest_threshold", 0.3),
            weight_rules=tuple(WeightRule.from_dict(r) for r in d.get("weight_rules", ())),
            admissible_proxies={
                k: tuple(v) for k, v in d.get("admissible_proxies", {}).items()
            },
            heuristic_thresholds=dict(d.get("heuristic_thresholds", {})),
        )


def default_policy() -> TrustPolicy:
    return TrustPolicy(id="default")


class CycleError(ValueError):
    """The argumentative subgraph contains a cycle."""

    def __init__(self, cycle_nodes):
        self.cycle_nodes = tuple(cycle_nodes)
        super().__init__(f"evidence cycle among nodes {list(self.cycle_nodes)}")


def _topological_sort(node_ids, edges) -> Optional[list[str]]:
    """Kahn's algorithm over child->parent edges; children come first.

    Ties resolved by node id so the order is deterministic. Returns None
    when a cycle prevents completion.
    """
    ids = sorted(node_ids)
    indegree = {n: 0 for n in ids}
    children: dict[str, list[str]] = {n: [] for n in ids}
    for e in edges:
        if e.from_id in indegree and e.to_id in indegree:
            indegree[e.to_id] += 1
            children[e.from_id].append(e.to_id)
    ready = sorted(n for n in ids if indegree[n] == 0)
    order: list[str] = []
    heapq.heapify(ready)
    while ready:
        n = heapq.heappop(ready)
        order.append(n)
        for m in children[n]:
            indegree[m] -= 1
            if indegree[m] == 0:
                heapq.heappush(ready, m)
    if len(order) != len(ids):
        return None
    return order


def _find_cycle_nodes(node_ids, edges) -> set[str]:
    """Nodes that remain after repeatedly stripping sources and sinks of
    the argumentative subgraph; these participate in (or feed) cycles."""
    ids = set(node_ids)
    pairs = {(e.from_id, e.to_id) for e in edges if e.from_id in ids and e.to_id in ids}
    changed = True
    while changed:
        changed = False
        indeg = {n: 0 for n in ids}
        outdeg = {n: 0 for n in ids}
        for a, b in pairs:
            outdeg[a] += 1
            indeg[b] += 1
        removable = {n for n in ids if indeg[n] == 0 or outdeg[n] == 0}
        if removable:
            ids -= removable
            pairs = {(a, b) for a, b in pairs if a in ids and b in ids}
            changed = True
    return ids


@dataclass
class Violation:
    """One broken lattice invariant. Violations are data, not exceptions."""

    code: str
    message: str
    subject_ids: tuple[str, ...] = ()

    def to_dict(self) -> dict:
        return {"code": self.code, "message": self.message, "subject_ids": list(self.subject_ids)}


def validate_lattice(lattice: TrustLattice) -> list[Violation]:
    """Report every broken structural invariant; empty means valid.

    Validation looks at structure only: disabled edges and anchors still
    count as present.
    """
    out: list[Violation] = []
    nodes = lattice.nodes

    if lattice.target_claim_id not in nodes:
        out.append(Violation(
            "missing-target",
            f"target claim {lattice.target_claim_id!r} is not a node",
            (lattice.target_claim_id,),
        ))

    for eid, e in sorted(lattice.edges.items()):
        if e.to_id not in nodes:
            out.append(Violation("dangling-edge", f"edge {eid} targets missing node {e.to_id!r}", (eid,)))
        if e.is_argumentative() and e.from_id not in nodes:
            out.append(Violation("dangling-edge", f"edge {eid} leaves missing node {e.from_id!r}", (eid,)))

    for nid, anchor in sorted(lattice.anchors.items()):
        if nid not in nodes:
            out.append(Violation("anchor-missing-node", f"anchor on missing node {nid!r}", (nid,)))
        if anchor.node_id != nid:
            out.append(Violation("anchor-key-mismatch", f"anchor keyed {nid!r} names node {anchor.node_id!r}", (nid,)))

    arg_edges = [e for e in lattice.argument_edges()
                 if e.from_id in nodes and e.to_id in nodes]
    if _topological_sort(nodes.keys(), arg_edges) is None:
        cyc = tuple(sorted(_find_cycle_nodes(nodes.keys(), arg_edges)))
        out.append(Violation("cycle", f"evidence cycle among nodes {list(cyc)}", cyc))

    has_incoming = {e.to_id for e in arg_edges}
    for nid in sorted(nodes):
        if nid not in has_incoming and nid not in lattice.anchors:
            out.append(Violation("missing-anchor", f"leaf node {nid!r} has no anchor", (nid,)))
    for nid in sorted(lattice.anchors):
        if nid in has_incoming:
            out.append(Violation(
                "anchored-with-evidence",
                f"anchored node {nid!r} has incoming evidence edges",
                (nid,),
            ))

    return out
