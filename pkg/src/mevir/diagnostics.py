"""Bias-pattern heuristics over session logs and lattice structure.

Each detector is a pure rule on observable behavior: which sources were
consulted, how fast a commitment was made, what anchors the lattice rests
on. Flags never claim anything about the user's mind; they describe the
interaction pattern and name the epistemic failure mode it is consistent
with. The failure-mode labels are the fixed diagnosis vocabulary:
"Corruption of Path 2" (deferral corrupted), "Misapplication of Path 1"
(self-reliance where deferral was due), and "Corruption of the evidence
base for Path 1" (direct judgment fed by a skewed sample).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .model import AgentProfile, SourceRecord, TrustLattice, TrustPolicy

DIAGNOSIS_PATH2 = "Corruption of Path 2"
DIAGNOSIS_PATH1 = "Misapplication of Path 1"
DIAGNOSIS_PATH1_EVIDENCE = "Corruption of the evidence base for Path 1"

DEFAULT_THRESHOLDS = {
    "confirmation_min_sources": 3,
    "confirmation_share": 0.8,
    "availability_max_sources": 1,
}

# Leaning buckets at +-1/3: left [-1,-1/3), center [-1/3,1/3], right (1/3,1].
def leaning_bucket(leaning: float) -> str:
    if leaning < -1.0 / 3.0:
        return "left"
    if leaning > 1.0 / 3.0:
        return "right"
    return "center"


@dataclass
class SessionEvent:
    kind: str  # "consulted" or "committed"
    step: int
    claim_id: str
    source_id: Optional[str] = None
    supports_current_stance: Optional[bool] = None
    verdict: Optional[str] = None

    def __post_init__(self):
        if self.kind not in ("consulted", "committed"):
            raise ValueError(f"unknown session event kind {self.kind!r}")
        if self.kind == "consulted" and self.source_id is None:
            raise ValueError("consulted event requires source_id")

    def to_dict(self) -> dict:
        d: dict = {"kind": self.kind, "step": self.step, "claim_id": self.claim_id}
        if self.kind == "consulted":
            d["source_id"] = self.source_id
            d["supports_current_stance"] = bool(self.supports_current_stance)
        else:
            d["verdict"] = self.verdict
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "SessionEvent":
        return cls(
            kind=d["kind"],
            step=d["step"],
            claim_id=d["claim_id"],
            source_id=d.get("source_id"),
            supports_current_stance=d.get("supports_current_stance"),
            verdict=d.get("verdict"),
        )


@dataclass
class SessionLog:
    """Ordered record of one analyst's information-seeking behavior."""

    id: str
    events: tuple[SessionEvent, ...] = ()
    lattice_id: Optional[str] = None
    profile_id: Optional[str] = None
    policy_id: Optional[str] = None

    def __post_init__(self):
        self.events = tuple(sorted(self.events, key=lambda e: e.step))
        steps = [e.step for e in self.events]
        if len(steps) != len(set(steps)):
            raise ValueError(f"session {self.id}: steps must be strictly increasing")

    def consulted(self) -> list[SessionEvent]:
        return [e for e in self.events if e.kind == "consulted"]

    def committed(self) -> list[SessionEvent]:
        return [e for e in self.events if e.kind == "committed"]

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "lattice_id": self.lattice_id,
            "profile_id": self.profile_id,
            "policy_id": self.policy_id,
            "events": [e.to_dict() for e in self.events],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "SessionLog":
        return cls(
            id=d["id"],
            events=tuple(SessionEvent.from_dict(e) for e in d.get("events", [])),
            lattice_id=d.get("lattice_id"),
            profile_id=d.get("profile_id"),
            policy_id=d.get("policy_id"),
        )


@dataclass
class BiasFlag:
    kind: str  # confirmation | availability | overconfidence | bandwagon | halo
    severity: float
    explanation: str
    mevir_diagnosis: str
    subject_ids: tuple[str, ...] = ()

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "severity": self.severity,
            "explanation": self.explanation,
            "mevir_diagnosis": self.mevir_diagnosis,
            "subject_ids": list(self.subject_ids),
        }


def _threshold(policy: Optional[TrustPolicy], name: str) -> float:
    if policy is not None and name in policy.heuristic_thresholds:
        return policy.heuristic_thresholds[name]
    return DEFAULT_THRESHOLDS[name]


def detect_confirmation(
    session: SessionLog,
    sources: dict[str, SourceRecord],
    policy: Optional[TrustPolicy] = None,
) -> Optional[BiasFlag]:
    """Only stance-confirming consults, concentrated in one leaning bucket."""
    consults = session.consulted()
    min_sources = _threshold(policy, "confirmation_min_sources")
    share_needed = _threshold(policy, "confirmation_share")
    if len(consults) < min_sources:
        return None
    if not all(e.supports_current_stance for e in consults):
        return None
    buckets: dict[str, int] = {}
    for e in consults:
        src = sources.get(e.source_id)
        if src is None:
            return None
        buckets[leaning_bucket(src.leaning)] = buckets.get(leaning_bucket(src.leaning), 0) + 1
    top = max(buckets.values())
    share = top / len(consults)
    if share < share_needed:
        return None
    return BiasFlag(
        kind="confirmation",
        severity=share,
        explanation=(
            f"Warning: all {len(consults)} sources you consulted support your current "
            "stance and sit in a single ideological bucket. This pattern is consistent "
            "with confirmation bias. Consider a well-reasoned critique from a credible "
            "authority with a different perspective."
        ),
        mevir_diagnosis=DIAGNOSIS_PATH2,
        subject_ids=tuple(sorted({e.source_id for e in consults})),
    )


def detect_availability(
    session: SessionLog,
    lattice: Optional[TrustLattice],
    policy: Optional[TrustPolicy] = None,
) -> Optional[BiasFlag]:
    """Commitment right after one or few vivid (anecdotal/testimonial)
    stories. Requires at least one consult: an unprompted commitment is not
    an availability pattern."""
    max_sources = _threshold(policy, "availability_max_sources")
    commits = session.committed()
    if not commits:
        return None
    first_commit = commits[0]
    prior_consults = [
        e for e in session.consulted() if e.step < first_commit.step
    ]
    if not prior_consults or len(prior_consults) > max_sources:
        return None
    vivid = {"anecdotal", "testimonial"}
    for e in prior_consults:
        claim = lattice.nodes.get(e.claim_id) if lattice is not None else None
        if claim is None or claim.evidence_kind not in vivid:
            return None
    return BiasFlag(
        kind="availability",
        severity=1.0,
        explanation=(
            "You committed to a verdict after consulting only vivid personal stories. "
            "A memorable example may not be representative; this pattern is consistent "
            "with the availability heuristic. Consider the broader statistical data on "
            "this topic."
        ),
        mevir_diagnosis=DIAGNOSIS_PATH1_EVIDENCE,
        subject_ids=tuple(sorted({e.claim_id for e in prior_consults})),
    )


def detect_halo(
    lattice: TrustLattice,
    sources: dict[str, SourceRecord],
) -> list[BiasFlag]:
    """Authority anchors whose source has no expertise in the claim's
    topics: authority stretched beyond its domain."""
    flags = []
    for nid in sorted(lattice.anchors):
        anchor = lattice.anchors[nid]
        if anchor.kind != "authority" or nid in lattice.disabled_anchors:
            continue
        src = sources.get(anchor.source_id)
        claim = lattice.nodes.get(nid)
        if src is None or claim is None:
            continue
        if set(src.expertise_domains) & set(claim.topics):
            continue
        flags.append(BiasFlag(
            kind="halo",
            severity=1.0,
            explanation=(
                f"The claim {nid!r} is anchored on {src.name or src.id}, whose declared "
                f"expertise ({', '.join(src.expertise_domains) or 'none'}) does not cover "
                f"the claim's topics ({', '.join(claim.topics) or 'none'}). Authority in "
                "one field does not transfer to another."
            ),
            mevir_diagnosis=DIAGNOSIS_PATH2,
            subject_ids=(nid, anchor.source_id),
        ))
    return flags


def detect_bandwagon(
    lattice: TrustLattice,
    sources: dict[str, SourceRecord],
) -> list[BiasFlag]:
    """Authority anchors whose source is a crowd."""
    flags = []
    for nid in sorted(lattice.anchors):
        anchor = lattice.anchors[nid]
        if anchor.kind != "authority" or nid in lattice.disabled_anchors:
            continue
        src = sources.get(anchor.source_id)
        if src is None or src.kind != "crowd":
            continue
        flags.append(BiasFlag(
            kind="bandwagon",
            severity=1.0,
            explanation=(
                f"The claim {nid!r} defers to {src.name or src.id}, which is a crowd, "
                "not a competent authority. Popularity is evidence of popularity, not "
                "of truth."
            ),
            mevir_diagnosis=DIAGNOSIS_PATH2,
            subject_ids=(nid, anchor.source_id),
        ))
    return flags


def detect_overconfidence(
    lattice: TrustLattice,
    profile: AgentProfile,
) -> Optional[BiasFlag]:
    """Self-evaluated verdict on a topic outside declared competence, with
    no deferral anywhere in the lattice."""
    target = lattice.nodes.get(lattice.target_claim_id)
    if target is None or not target.topics:
        return None
    if set(target.topics) & set(profile.competence_domains):
        return None
    for nid, anchor in lattice.anchors.items():
        if anchor.kind == "authority" and nid not in lattice.disabled_anchors:
            return None
    return BiasFlag(
        kind="overconfidence",
        severity=1.0,
        explanation=(
            f"The target claim's topics ({', '.join(target.topics) or 'none'}) fall "
            "outside your declared competence, yet the lattice contains no deferral to "
            "any authority. Consider whether direct evaluation is warranted here."
        ),
        mevir_diagnosis=DIAGNOSIS_PATH1,
        subject_ids=(lattice.target_claim_id,),
    )


def insularity(lattice: TrustLattice, sources: dict[str, SourceRecord]) -> float:
    """Share of the lattice's referenced sources in its largest leaning
    bucket. 1.0 marks a fully self-referential (echo-chamber) lattice;
    0 when no sources are referenced."""
    referenced: set[str] = set()
    for _nid, sids in lattice.provenance.items():
        referenced.update(sids)
    for nid, anchor in lattice.anchors.items():
        if anchor.kind == "authority":
            referenced.add(anchor.source_id)
    known = [sources[sid] for sid in sorted(referenced) if sid in sources]
    if not known:
        return 0.0
    buckets: dict[str, int] = {}
    for src in known:
        b = leaning_bucket(src.leaning)
        buckets[b] = buckets.get(b, 0) + 1
    return max(buckets.values()) / len(known)


def diagnose(
    session: Optional[SessionLog],
    lattice: Optional[TrustLattice],
    sources: dict[str, SourceRecord],
    profile: Optional[AgentProfile] = None,
    policy: Optional[TrustPolicy] = None,
) -> list[BiasFlag]:
    """Run every applicable detector; order by severity desc, then kind,
    then subjects, so the output is deterministic."""
    flags: list[BiasFlag] = []
    if session is not None:
        f = detect_confirmation(session, sources, policy)
        if f:
            flags.append(f)
        f = detect_availability(session, lattice, policy)
        if f:
            flags.append(f)
    if lattice is not None:
        flags.extend(detect_halo(lattice, sources))
        flags.extend(detect_bandwagon(lattice, sources))
        if profile is not None:
            f = detect_overconfidence(lattice, profile)
            if f:
                flags.append(f)
    flags.sort(key=lambda f: (-f.severity, f.kind, f.subject_ids))
    return flags
