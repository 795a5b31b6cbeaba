"""Self-contained bundle format tying the engine together.

A bundle is one JSON document holding a claim corpus, source table, agent
profiles, trust policies, an optional lexicon (inline or by file
reference), epistemic states, and session logs. Parsing is strict: unknown
fields, broken ranges, and dangling references are rejected with the JSON
path of the offending value. Emission is canonical — sorted keys, entity
arrays sorted by id, fixed indentation — so equal bundles produce equal
bytes and byte equality is a usable test for state equality.
"""

from __future__ import annotations

import hashlib
import json
import os
from dataclasses import dataclass, field
from typing import Any, Optional

from .diagnostics import SessionLog
from .elaboration import ClaimCorpus
from .evaluation import evaluate
from .foundations import FOUNDATION_NAMES, FoundationVector
from .model import (
    AgentProfile,
    Claim,
    EvidenceEdge,
    SourceRecord,
    TrustAnchor,
    TrustLattice,
    TrustPolicy,
    WeightRule,
    validate_lattice,
)
from .moral import MoralLexicon
from .revision import EpistemicState, RevisionEntry


class BundleError(ValueError):
    def __init__(self, path: str, message: str):
        self.path = path
        super().__init__(f"{path}: {message}")


@dataclass
class Bundle:
    id: str
    corpus: ClaimCorpus = field(default_factory=ClaimCorpus)
    sources: dict[str, SourceRecord] = field(default_factory=dict)
    profiles: dict[str, AgentProfile] = field(default_factory=dict)
    policies: dict[str, TrustPolicy] = field(default_factory=dict)
    lexicon: Optional[MoralLexicon] = None
    lexicon_ref: Optional[str] = None
    states: dict[str, EpistemicState] = field(default_factory=dict)
    sessions: dict[str, SessionLog] = field(default_factory=dict)

    def state_for_lattice(self, lattice_id: str) -> Optional[EpistemicState]:
        for st in self.states.values():
            if st.lattice.id == lattice_id or st.id == lattice_id:
                return st
        return None

    def profile(self, profile_id: str) -> AgentProfile:
        if profile_id not in self.profiles:
            raise KeyError(f"unknown profile {profile_id!r}")
        return self.profiles[profile_id]

    def policy(self, policy_id: str) -> TrustPolicy:
        if policy_id not in self.policies:
            raise KeyError(f"unknown policy {policy_id!r}")
        return self.policies[policy_id]


# ---------------------------------------------------------------------------
# strict schema walking


def _require(d: dict, path: str, known: dict[str, bool]) -> None:
    """known maps field name -> required?; anything else is rejected."""
    if not isinstance(d, dict):
        raise BundleError(path, f"expected object, got {type(d).__name__}")
    for k in d:
        if k not in known:
            raise BundleError(f"{path}.{k}", "unknown field")
    for k, required in known.items():
        if required and k not in d:
            raise BundleError(path, f"missing required field {k!r}")


def _string(v: Any, path: str) -> str:
    if not isinstance(v, str):
        raise BundleError(path, f"expected string, got {type(v).__name__}")
    return v


def _number(v: Any, path: str) -> float:
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise BundleError(path, f"expected number, got {type(v).__name__}")
    return float(v)


def _array(v: Any, path: str) -> list:
    if not isinstance(v, list):
        raise BundleError(path, f"expected array, got {type(v).__name__}")
    return v


def _object(v: Any, path: str) -> dict:
    if not isinstance(v, dict):
        raise BundleError(path, f"expected object, got {type(v).__name__}")
    return v


def _build(ctor, d: dict, path: str):
    """Constructor call with domain validation errors rewritten to paths."""
    try:
        return ctor(d)
    except BundleError:
        raise
    except (ValueError, KeyError, TypeError) as exc:
        raise BundleError(path, str(exc)) from exc


def _parse_vector(v: Any, path: str) -> FoundationVector:
    d = _object(v, path)
    _require(d, path, {name: False for name in FOUNDATION_NAMES})
    for name, val in d.items():
        _number(val, f"{path}.{name}")
    return _build(FoundationVector.from_dict, d, path)


def _parse_claim(v: Any, path: str) -> Claim:
    d = _object(v, path)
    _require(d, path, {
        "id": True, "text": False, "topics": False, "truth_maker_kind": False,
        "proxy_kind": False, "evidence_kind": False, "footprint": False,
        "mutually_exclusive_with": False,
    })
    if d.get("footprint") is not None:
        _parse_vector(d["footprint"], f"{path}.footprint")
    return _build(Claim.from_dict, d, path)


def _parse_edge(v: Any, path: str) -> EvidenceEdge:
    d = _object(v, path)
    _require(d, path, {
        "id": True, "from": True, "to": True, "kind": True, "declared_weight": False,
    })
    if "declared_weight" in d:
        _number(d["declared_weight"], f"{path}.declared_weight")
    return _build(EvidenceEdge.from_dict, d, path)


def _parse_anchor(v: Any, path: str) -> TrustAnchor:
    d = _object(v, path)
    _require(d, path, {
        "node_id": True, "kind": True, "source_id": False, "base_strength": False,
    })
    if d.get("base_strength") is not None:
        _number(d["base_strength"], f"{path}.base_strength")
    return _build(TrustAnchor.from_dict, d, path)


def _parse_source(v: Any, path: str) -> SourceRecord:
    d = _object(v, path)
    _require(d, path, {
        "id": True, "name": False, "kind": False, "expertise_domains": False,
        "leaning": False, "reputation": False, "funding": False, "public_faith": False,
    })
    for key in ("leaning", "reputation"):
        if key in d:
            _number(d[key], f"{path}.{key}")
    return _build(SourceRecord.from_dict, d, path)


def _parse_profile(v: Any, path: str) -> AgentProfile:
    d = _object(v, path)
    _require(d, path, {
        "id": True, "foundation_weights": False, "beliefs": False, "pretrusted": False,
        "source_trust": False, "competence_domains": False, "bias_dispositions": False,
    })
    if "foundation_weights" in d:
        _parse_vector(d["foundation_weights"], f"{path}.foundation_weights")
    for key in ("beliefs", "pretrusted"):
        if key in d:
            for cid, score in _object(d[key], f"{path}.{key}").items():
                _number(score, f"{path}.{key}.{cid}")
    if "source_trust" in d:
        for sid, entry in _object(d["source_trust"], f"{path}.source_trust").items():
            for domain, score in _object(entry, f"{path}.source_trust.{sid}").items():
                _number(score, f"{path}.source_trust.{sid}.{domain}")
    return _build(AgentProfile.from_dict, d, path)


def _parse_rule(v: Any, path: str) -> WeightRule:
    d = _object(v, path)
    _require(d, path, {
        "multiplier": False, "source_kind": False, "leaning": False,
        "reputation": False, "evidence_kind": False, "proxy_kind": False,
    })
    for key in ("leaning", "reputation"):
        if d.get(key) is not None:
            arr = _array(d[key], f"{path}.{key}")
            if len(arr) != 2:
                raise BundleError(f"{path}.{key}", "expected [low, high]")
    return _build(WeightRule.from_dict, d, path)


def _parse_policy(v: Any, path: str) -> TrustPolicy:
    d = _object(v, path)
    _require(d, path, {
        "id": True, "tau": False, "prior": False, "uncommitted": False, "lambda": False,
        "ingest_threshold": False, "weight_rules": False, "admissible_proxies": False,
        "heuristic_thresholds": False,
    })
    for key in ("tau", "prior", "uncommitted", "lambda", "ingest_threshold"):
        if key in d:
            _number(d[key], f"{path}.{key}")
    for i, r in enumerate(_array(d.get("weight_rules", []), f"{path}.weight_rules")):
        _parse_rule(r, f"{path}.weight_rules[{i}]")
    return _build(TrustPolicy.from_dict, d, path)


def _parse_lattice(v: Any, path: str) -> TrustLattice:
    d = _object(v, path)
    _require(d, path, {
        "id": True, "target_claim_id": True, "nodes": True, "edges": True,
        "anchors": True, "disabled_edges": False, "disabled_anchors": False,
    })
    seen_nodes: set[str] = set()
    for i, c in enumerate(_array(d["nodes"], f"{path}.nodes")):
        claim = _parse_claim(c, f"{path}.nodes[{i}]")
        if claim.id in seen_nodes:
            raise BundleError(f"{path}.nodes[{i}].id", f"duplicate node id {claim.id!r}")
        seen_nodes.add(claim.id)
    seen_edges: set[str] = set()
    for i, e in enumerate(_array(d["edges"], f"{path}.edges")):
        edge = _parse_edge(e, f"{path}.edges[{i}]")
        if edge.id in seen_edges:
            raise BundleError(f"{path}.edges[{i}].id", f"duplicate edge id {edge.id!r}")
        seen_edges.add(edge.id)
    seen_anchors: set[str] = set()
    for i, a in enumerate(_array(d["anchors"], f"{path}.anchors")):
        anchor = _parse_anchor(a, f"{path}.anchors[{i}]")
        if anchor.node_id in seen_anchors:
            raise BundleError(f"{path}.anchors[{i}]", f"duplicate anchor for node {anchor.node_id!r}")
        seen_anchors.add(anchor.node_id)
    return _build(TrustLattice.from_dict, d, path)


def _parse_revision_entry(v: Any, path: str) -> RevisionEntry:
    d = _object(v, path)
    _require(d, path, {
        "id": True, "trigger": True, "disposition": True, "context": False,
        "retracted": False, "added": False, "removed": False, "reversed_entry": False,
    })
    trig = _object(d["trigger"], f"{path}.trigger")
    _require(trig, f"{path}.trigger", {"claim_id": True, "source_id": True})
    if "retracted" in d:
        r = _object(d["retracted"], f"{path}.retracted")
        _require(r, f"{path}.retracted", {"anchors": False, "edges": False})
    if "added" in d:
        a = _object(d["added"], f"{path}.added")
        _require(a, f"{path}.added", {"claim": False, "edges": False, "anchors": False})
    if "removed" in d:
        r = _object(d["removed"], f"{path}.removed")
        _require(r, f"{path}.removed", {"anchors": False})
    return _build(RevisionEntry.from_dict, d, path)


def _parse_session(v: Any, path: str) -> SessionLog:
    d = _object(v, path)
    _require(d, path, {
        "id": True, "lattice_id": False, "profile_id": False, "policy_id": False,
        "events": True,
    })
    for i, e in enumerate(_array(d["events"], f"{path}.events")):
        ed = _object(e, f"{path}.events[{i}]")
        _require(ed, f"{path}.events[{i}]", {
            "kind": True, "step": True, "claim_id": True, "source_id": False,
            "supports_current_stance": False, "verdict": False,
        })
    return _build(SessionLog.from_dict, d, path)


def _parse_lexicon(v: Any, path: str) -> MoralLexicon:
    d = _object(v, path)
    _require(d, path, {"name": False, "version": False, "entries": True})
    entries = {}
    for phrase, vec in _object(d["entries"], f"{path}.entries").items():
        entries[phrase] = _parse_vector(vec, f"{path}.entries.{phrase}")
    return _build(
        lambda dd: MoralLexicon(entries=entries, name=dd.get("name", "unnamed"),
                                version=dd.get("version", "0")),
        d, path,
    )


# ---------------------------------------------------------------------------
# parse / emit


def parse_bundle(data: bytes | str, lexicon_base: Optional[str] = None) -> Bundle:
    """Parse and fully validate a bundle document.

    `lexicon_base` is the directory used to resolve a lexicon_ref; without
    it a referenced lexicon is left unresolved (states still evaluate, with
    cached footprints or none).
    """
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise BundleError("$", f"not valid UTF-8: {exc}") from exc
    try:
        doc = json.loads(data)
    except json.JSONDecodeError as exc:
        raise BundleError(f"$ (line {exc.lineno}, column {exc.colno})", f"malformed JSON: {exc.msg}") from exc

    _require(_object(doc, "$"), "$", {
        "id": True, "corpus": False, "sources": False, "profiles": False,
        "policies": False, "lexicon": False, "lexicon_ref": False,
        "states": False, "sessions": False,
    })
    bundle_id = _string(doc["id"], "$.id")

    corpus_doc = _object(doc.get("corpus", {"claims": [], "links": []}), "$.corpus")
    _require(corpus_doc, "$.corpus", {"claims": False, "links": False})
    claims: dict[str, Claim] = {}
    for i, c in enumerate(_array(corpus_doc.get("claims", []), "$.corpus.claims")):
        claim = _parse_claim(c, f"$.corpus.claims[{i}]")
        if claim.id in claims:
            raise BundleError(f"$.corpus.claims[{i}].id", f"duplicate claim id {claim.id!r}")
        claims[claim.id] = claim
    links: dict[str, EvidenceEdge] = {}
    for i, e in enumerate(_array(corpus_doc.get("links", []), "$.corpus.links")):
        edge = _parse_edge(e, f"$.corpus.links[{i}]")
        if edge.id in links:
            raise BundleError(f"$.corpus.links[{i}].id", f"duplicate link id {edge.id!r}")
        links[edge.id] = edge

    sources: dict[str, SourceRecord] = {}
    for i, s in enumerate(_array(doc.get("sources", []), "$.sources")):
        src = _parse_source(s, f"$.sources[{i}]")
        if src.id in sources:
            raise BundleError(f"$.sources[{i}].id", f"duplicate source id {src.id!r}")
        sources[src.id] = src

    profiles: dict[str, AgentProfile] = {}
    for i, p in enumerate(_array(doc.get("profiles", []), "$.profiles")):
        prof = _parse_profile(p, f"$.profiles[{i}]")
        if prof.id in profiles:
            raise BundleError(f"$.profiles[{i}].id", f"duplicate profile id {prof.id!r}")
        profiles[prof.id] = prof

    policies: dict[str, TrustPolicy] = {}
    for i, p in enumerate(_array(doc.get("policies", []), "$.policies")):
        pol = _parse_policy(p, f"$.policies[{i}]")
        if pol.id in policies:
            raise BundleError(f"$.policies[{i}].id", f"duplicate policy id {pol.id!r}")
        policies[pol.id] = pol

    lexicon = None
    if doc.get("lexicon") is not None:
        lexicon = _parse_lexicon(doc["lexicon"], "$.lexicon")
    lexicon_ref = doc.get("lexicon_ref")
    if lexicon_ref is not None:
        _string(lexicon_ref, "$.lexicon_ref")
        if lexicon is None and lexicon_base is not None:
            ref_path = os.path.join(lexicon_base, lexicon_ref)
            try:
                with open(ref_path, "r", encoding="utf-8") as fh:
                    lexicon = MoralLexicon.from_tsv(fh.read(), name=lexicon_ref)
            except OSError as exc:
                raise BundleError("$.lexicon_ref", f"cannot read {ref_path}: {exc}") from exc
            except ValueError as exc:
                raise BundleError("$.lexicon_ref", str(exc)) from exc

    # referential integrity: corpus links
    for i, eid in enumerate(sorted(links)):
        e = links[eid]
        path = f"$.corpus.links[id={eid}]"
        if e.to_id not in claims:
            raise BundleError(path, f"dangling reference: target claim {e.to_id!r}")
        if e.is_argumentative():
            if e.from_id not in claims:
                raise BundleError(path, f"dangling reference: evidence claim {e.from_id!r}")
        elif e.from_id not in sources:
            raise BundleError(path, f"dangling reference: source {e.from_id!r}")
    for cid in sorted(claims):
        for other in claims[cid].mutually_exclusive_with:
            if other not in claims:
                raise BundleError(
                    f"$.corpus.claims[id={cid}].mutually_exclusive_with",
                    f"dangling reference: claim {other!r}",
                )

    corpus = ClaimCorpus(claims=claims, links=links)

    states: dict[str, EpistemicState] = {}
    for i, s in enumerate(_array(doc.get("states", []), "$.states")):
        sd = _object(s, f"$.states[{i}]")
        _require(sd, f"$.states[{i}]", {
            "id": True, "profile": True, "policy": True, "lattice": True,
            "revision_log": False,
        })
        sid = _string(sd["id"], f"$.states[{i}].id")
        if sid in states:
            raise BundleError(f"$.states[{i}].id", f"duplicate state id {sid!r}")
        prof_id = _string(sd["profile"], f"$.states[{i}].profile")
        if prof_id not in profiles:
            raise BundleError(f"$.states[{i}].profile", f"dangling reference: profile {prof_id!r}")
        pol_id = _string(sd["policy"], f"$.states[{i}].policy")
        if pol_id not in policies:
            raise BundleError(f"$.states[{i}].policy", f"dangling reference: policy {pol_id!r}")
        lattice = _parse_lattice(sd["lattice"], f"$.states[{i}].lattice")
        for eid in sorted(lattice.edges):
            e = lattice.edges[eid]
            if e.kind == "sourced_from" and e.from_id not in sources:
                raise BundleError(
                    f"$.states[{i}].lattice.edges[id={eid}]",
                    f"dangling reference: source {e.from_id!r}",
                )
        for nid in sorted(lattice.anchors):
            a = lattice.anchors[nid]
            if a.kind == "authority" and a.source_id not in sources:
                raise BundleError(
                    f"$.states[{i}].lattice.anchors[node={nid}]",
                    f"dangling reference: source {a.source_id!r}",
                )
        violations = validate_lattice(lattice)
        if violations:
            raise BundleError(
                f"$.states[{i}].lattice",
                "invalid lattice: " + "; ".join(v.message for v in violations),
            )
        log = tuple(
            _parse_revision_entry(r, f"$.states[{i}].revision_log[{j}]")
            for j, r in enumerate(_array(sd.get("revision_log", []), f"$.states[{i}].revision_log"))
        )
        evaluation = evaluate(lattice, profiles[prof_id], sources, policies[pol_id], lexicon)
        states[sid] = EpistemicState(
            id=sid, lattice=lattice, evaluation=evaluation, revision_log=log,
            profile_id=prof_id, policy_id=pol_id,
        )

    sessions: dict[str, SessionLog] = {}
    for i, s in enumerate(_array(doc.get("sessions", []), "$.sessions")):
        sess = _parse_session(s, f"$.sessions[{i}]")
        if sess.id in sessions:
            raise BundleError(f"$.sessions[{i}].id", f"duplicate session id {sess.id!r}")
        for j, ev in enumerate(sess.events):
            if ev.kind == "consulted" and ev.source_id not in sources:
                raise BundleError(
                    f"$.sessions[{i}].events[{j}].source_id",
                    f"dangling reference: source {ev.source_id!r}",
                )
        sessions[sess.id] = sess

    return Bundle(
        id=bundle_id,
        corpus=corpus,
        sources=sources,
        profiles=profiles,
        policies=policies,
        lexicon=lexicon,
        lexicon_ref=lexicon_ref,
        states=states,
        sessions=sessions,
    )


def canonical_json(payload: Any) -> bytes:
    """Deterministic UTF-8 JSON: sorted keys, two-space indent."""
    return (json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False) + "\n").encode("utf-8")


def bundle_to_dict(bundle: Bundle, include_revision_logs: bool = True) -> dict:
    doc: dict = {
        "id": bundle.id,
        "corpus": bundle.corpus.to_dict(),
        "sources": [bundle.sources[k].to_dict() for k in sorted(bundle.sources)],
        "profiles": [bundle.profiles[k].to_dict() for k in sorted(bundle.profiles)],
        "policies": [bundle.policies[k].to_dict() for k in sorted(bundle.policies)],
        "lexicon": None,
        "lexicon_ref": bundle.lexicon_ref,
        "states": [],
        "sessions": [bundle.sessions[k].to_dict() for k in sorted(bundle.sessions)],
    }
    if bundle.lexicon is not None and bundle.lexicon_ref is None:
        doc["lexicon"] = {
            "name": bundle.lexicon.name,
            "version": bundle.lexicon.version,
            "entries": {p: v.to_dict() for p, v in sorted(bundle.lexicon.entries.items())},
        }
    for sid in sorted(bundle.states):
        sd = bundle.states[sid].to_dict()
        if not include_revision_logs:
            sd["revision_log"] = []
        doc["states"].append(sd)
    return doc


def emit_bundle(bundle: Bundle, include_revision_logs: bool = True) -> bytes:
    """Canonical bytes; emit is deterministic and parse(emit(x)) == x."""
    return canonical_json(bundle_to_dict(bundle, include_revision_logs))


def bundle_hash(bundle: Bundle) -> str:
    return hashlib.sha256(emit_bundle(bundle)).hexdigest()
