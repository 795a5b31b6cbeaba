"""Deterministic random generators shared across the suite.

Everything takes an explicit random.Random so failures reproduce from the
seed printed by pytest.
"""

from __future__ import annotations

import random

import pytest

from mevir import (
    AgentProfile,
    Claim,
    ClaimCorpus,
    EvidenceEdge,
    FoundationVector,
    MoralLexicon,
    SourceRecord,
    TrustAnchor,
    TrustLattice,
    TrustPolicy,
    WeightRule,
    evaluate,
)
from mevir.foundations import FOUNDATION_NAMES

TOPIC_POOL = ("economy", "health", "climate", "politics", "ethics")
TM_POOL = (None, "physical-event", "speech-act", "policy-outcome")
PROXY_POOL = (None, "study", "record", "testimonial", "broadcast")
EVIDENCE_POOL = ("statistical", "anecdotal", "testimonial", "official_record", "opinion")
SOURCE_KIND_POOL = ("individual_expert", "institution", "media", "government", "crowd", "anonymous")
WORD_POOL = (
    "freedom", "harm", "pure", "nation", "merit", "equity", "experts",
    "storm", "ledger", "apple", "river", "glass", "quiet", "engine",
)


def random_vector(rng: random.Random) -> FoundationVector:
    return FoundationVector(*(round(rng.random(), 3) for _ in FOUNDATION_NAMES))


def random_lexicon(rng: random.Random) -> MoralLexicon:
    entries = {}
    n_single = rng.randint(2, 6)
    singles = rng.sample(WORD_POOL, n_single)
    for w in singles:
        vec = [0.0] * len(FOUNDATION_NAMES)
        for k in rng.sample(range(len(FOUNDATION_NAMES)), rng.randint(1, 3)):
            vec[k] = round(rng.uniform(0.1, 1.0), 3)
        entries[w] = FoundationVector(*vec)
    for _ in range(rng.randint(0, 3)):
        words = rng.sample(WORD_POOL, rng.randint(2, 3))
        phrase = " ".join(words)
        if phrase in entries:
            continue
        vec = [0.0] * len(FOUNDATION_NAMES)
        vec[rng.randrange(len(FOUNDATION_NAMES))] = round(rng.uniform(0.1, 1.0), 3)
        entries[phrase] = FoundationVector(*vec)
    return MoralLexicon(entries=entries, name="random", version="0")


def random_text(rng: random.Random, max_words: int = 30) -> str:
    n = rng.randint(0, max_words)
    words = [rng.choice(WORD_POOL) for _ in range(n)]
    seps = [rng.choice([" ", ", ", "! ", " - ", ": "]) for _ in range(n)]
    out = []
    for w, s in zip(words, seps):
        out.append(w.upper() if rng.random() < 0.2 else w)
        out.append(s)
    return "".join(out)


def random_sources(rng: random.Random, n: int | None = None) -> dict[str, SourceRecord]:
    n = n or rng.randint(2, 4)
    out = {}
    for i in range(n):
        sid = f"s{i}"
        out[sid] = SourceRecord(
            id=sid,
            name=f"Source {i}",
            kind=rng.choice(SOURCE_KIND_POOL),
            expertise_domains=tuple(rng.sample(TOPIC_POOL, rng.randint(0, 2))),
            leaning=round(rng.uniform(-1, 1), 3),
            reputation=round(rng.random(), 3),
            public_faith=rng.random() < 0.2,
        )
    return out


def random_policy(rng: random.Random, lambda_choices=(0.0, 0.3, 0.5, 1.0)) -> TrustPolicy:
    rules = []
    for _ in range(rng.randint(0, 2)):
        kind = rng.choice(("source_kind", "evidence_kind", "proxy_kind", "leaning"))
        kwargs = {"multiplier": round(rng.uniform(0.0, 2.0), 3)}
        if kind == "source_kind":
            kwargs["source_kind"] = rng.choice(SOURCE_KIND_POOL)
        elif kind == "evidence_kind":
            kwargs["evidence_kind"] = rng.choice(EVIDENCE_POOL)
        elif kind == "proxy_kind":
            kwargs["proxy_kind"] = rng.choice([p for p in PROXY_POOL if p])
        else:
            lo = round(rng.uniform(-1, 0.5), 3)
            kwargs["leaning"] = (lo, round(rng.uniform(lo, 1), 3))
        rules.append(WeightRule(**kwargs))
    admissible = {}
    for tm in TM_POOL:
        if tm and rng.random() < 0.4:
            admissible[tm] = tuple(
                rng.sample([p for p in PROXY_POOL if p], rng.randint(1, 3))
            )
    return TrustPolicy(
        id="pol",
        tau=0.5,
        prior=0.5,
        uncommitted=0.5,
        lambda_=rng.choice(lambda_choices),
        weight_rules=tuple(rules),
        admissible_proxies=admissible,
    )


def random_profile(rng: random.Random, sources: dict[str, SourceRecord]) -> AgentProfile:
    trust = {}
    for sid in sources:
        if rng.random() < 0.7:
            entry = {}
            if rng.random() < 0.8:
                entry["default"] = round(rng.random(), 3)
            for t in rng.sample(TOPIC_POOL, rng.randint(0, 2)):
                entry[t] = round(rng.random(), 3)
            if entry:
                trust[sid] = entry
    return AgentProfile(
        id="prof",
        foundation_weights=random_vector(rng),
        source_trust=trust,
        competence_domains=tuple(rng.sample(TOPIC_POOL, rng.randint(0, 2))),
    )


def random_claim(rng: random.Random, cid: str, with_footprint: bool = True) -> Claim:
    return Claim(
        id=cid,
        text=random_text(rng, 12),
        topics=tuple(rng.sample(TOPIC_POOL, rng.randint(0, 2))),
        truth_maker_kind=rng.choice(TM_POOL),
        proxy_kind=rng.choice(PROXY_POOL),
        evidence_kind=rng.choice(EVIDENCE_POOL),
        footprint=random_vector(rng) if with_footprint and rng.random() < 0.3 else None,
    )


def random_anchor(rng: random.Random, node_id: str, sources: dict[str, SourceRecord]) -> TrustAnchor:
    kind = rng.choice(("belief", "pre_trusted", "authority", "evidence_exhausted", "resource_exhausted"))
    if kind in ("belief", "pre_trusted"):
        return TrustAnchor(node_id, kind, base_strength=round(rng.random(), 3))
    if kind == "authority":
        return TrustAnchor(node_id, "authority", source_id=rng.choice(sorted(sources)))
    return TrustAnchor(node_id, kind)


def random_scenario(rng: random.Random, max_nodes: int = 20):
    """A valid lattice plus a compatible profile/sources/policy/lexicon."""
    n = rng.randint(1, max_nodes)
    sources = random_sources(rng)
    node_ids = [f"n{i:02d}" for i in range(n)]
    nodes = {nid: random_claim(rng, nid) for nid in node_ids}
    edges: dict[str, EvidenceEdge] = {}
    has_incoming: set[str] = set()
    for i in range(1, n):
        for j in rng.sample(range(i), rng.randint(1, min(2, i))):
            eid = f"e{i:02d}to{j:02d}"
            edges[eid] = EvidenceEdge(
                id=eid,
                from_id=node_ids[i],
                to_id=node_ids[j],
                kind=rng.choice(("supports", "attacks", "evidence_for")),
                declared_weight=round(rng.random(), 3),
            )
            has_incoming.add(node_ids[j])
    for nid in node_ids:
        if rng.random() < 0.4:
            sid = rng.choice(sorted(sources))
            eid = f"sf-{sid}-{nid}"
            edges[eid] = EvidenceEdge(id=eid, from_id=sid, to_id=nid, kind="sourced_from")
    anchors = {
        nid: random_anchor(rng, nid, sources)
        for nid in node_ids
        if nid not in has_incoming
    }
    lattice = TrustLattice(
        id="lat-rand",
        target_claim_id=node_ids[0],
        nodes=nodes,
        edges=edges,
        anchors=anchors,
    )
    profile = random_profile(rng, sources)
    policy = random_policy(rng)
    lexicon = random_lexicon(rng)
    return lattice, profile, sources, policy, lexicon


def random_corpus_scenario(rng: random.Random, max_claims: int = 12):
    """An acyclic corpus plus profile/policy/sources for elaboration."""
    n = rng.randint(1, max_claims)
    sources = random_sources(rng)
    claim_ids = [f"c{i:02d}" for i in range(n)]
    claims = {cid: random_claim(rng, cid) for cid in claim_ids}
    links: dict[str, EvidenceEdge] = {}
    for i in range(1, n):
        for j in rng.sample(range(i), rng.randint(0, min(2, i))):
            eid = f"l{i:02d}to{j:02d}"
            links[eid] = EvidenceEdge(
                id=eid,
                from_id=claim_ids[i],
                to_id=claim_ids[j],
                kind=rng.choice(("supports", "attacks", "evidence_for")),
                declared_weight=round(rng.random(), 3),
            )
    for cid in claim_ids:
        if rng.random() < 0.3:
            sid = rng.choice(sorted(sources))
            eid = f"sf-{sid}-{cid}"
            links[eid] = EvidenceEdge(id=eid, from_id=sid, to_id=cid, kind="sourced_from")
    corpus = ClaimCorpus(claims=claims, links=links)
    profile = random_profile(rng, sources)
    beliefs = {}
    pretrusted = {}
    for cid in claim_ids:
        r = rng.random()
        if r < 0.15:
            beliefs[cid] = round(rng.random(), 3)
        elif r < 0.25:
            pretrusted[cid] = round(rng.random(), 3)
    profile = AgentProfile(
        id=profile.id,
        foundation_weights=profile.foundation_weights,
        beliefs=beliefs,
        pretrusted=pretrusted,
        source_trust=profile.source_trust,
        competence_domains=profile.competence_domains,
    )
    policy = random_policy(rng)
    return corpus, claim_ids[0], profile, policy, sources


def make_exclusive(lattice: TrustLattice, a: str, b: str) -> TrustLattice:
    """New lattice where claims a and b are mutually exclusive."""
    new = lattice.copy()
    for x, y in ((a, b), (b, a)):
        old = new.nodes[x]
        new.nodes[x] = Claim(
            id=old.id, text=old.text, topics=old.topics,
            truth_maker_kind=old.truth_maker_kind, proxy_kind=old.proxy_kind,
            evidence_kind=old.evidence_kind, footprint=old.footprint,
            mutually_exclusive_with=tuple(set(old.mutually_exclusive_with) | {y}),
        )
    return new


def random_contradiction_instance(rng: random.Random, max_nodes: int = 6, max_tries: int = 40):
    """A lattice whose evaluation accepts a mutually exclusive pair.

    Returns (lattice, evaluation, profile, sources, policy, lexicon) or
    None when the dice never produce two accepted claims.
    """
    for _ in range(max_tries):
        lattice, profile, sources, policy, lexicon = random_scenario(rng, max_nodes)
        result = evaluate(lattice, profile, sources, policy, lexicon)
        accepted = [nid for nid, v in result.verdicts.items() if v == "accepted"]
        if len(accepted) < 2:
            continue
        a, b = rng.sample(accepted, 2)
        lattice = make_exclusive(lattice, a, b)
        result = evaluate(lattice, profile, sources, policy, lexicon)
        return lattice, result, profile, sources, policy, lexicon
    return None


@pytest.fixture
def rng():
    return random.Random(20240811)
