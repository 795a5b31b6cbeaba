#!/usr/bin/env python3
"""Changing your mind without erasing it.

Walks the revision pipeline on the shipped revision fixture: an untrusted
source is gated out; a trusted contrary study forces a contradiction
between exclusive claims; the engine retracts the cheapest element (never
deleting anything); and reinstatement restores the original lattice
byte-for-byte while the log remembers the whole episode.
"""

from mevir import (
    Claim,
    EvidenceEdge,
    NewInformation,
    TrustAnchor,
    find_contradictions,
    reinstate,
    revise,
)
from mevir.bundle import canonical_json
from mevir.fixtures import load_fixture

bundle = load_fixture("revision.json")
state = bundle.states["state-revision"]
profile = bundle.profile(state.profile_id)
policy = bundle.policy(state.policy_id)
original_bytes = canonical_json(state.lattice.to_dict())

print("=" * 72)
print("baseline: 'Treatment T is effective' rests on a strong trial belief")
print("=" * 72)
for nid, sigma in sorted(state.evaluation.scores.items()):
    print(f"  sigma({nid}) = {sigma:.3f} [{state.evaluation.verdicts[nid]}]")

print()
print("step 1: an anonymous blog claims the opposite -> trust gate")
blog_info = NewInformation(
    claim=Claim(id="rv-rumor", text="A blog says T is poison.", topics=("medicine",)),
    source_id="rv-blog",
    anchors=(TrustAnchor("rv-rumor", "authority", source_id="rv-blog"),),
)
state = revise(state, blog_info, profile, bundle.sources, policy, bundle.lexicon)
print(f"  disposition: {state.revision_log[-1].disposition} "
      f"(trust 0.5 x reputation 0.2 = 0.10 < ingest threshold 0.30)")
assert "rv-rumor" not in state.lattice.nodes

print()
print("step 2: a trusted journal reports significant harm -> merged")
journal_info = NewInformation(
    claim=Claim(id="rv-n1", text="New trial reports significant harm from T.",
                topics=("medicine",), evidence_kind="statistical"),
    source_id="rv-src",
    edges=(EvidenceEdge(id="rv-e-new", from_id="rv-n1", to_id="rv-c2",
                        kind="supports", declared_weight=0.6),),
    anchors=(TrustAnchor("rv-n1", "authority", source_id="rv-src"),),
)
state = revise(state, journal_info, profile, bundle.sources, policy, bundle.lexicon)
entry = state.revision_log[-1]
print(f"  disposition: {entry.disposition}")
print(f"  retracted edges: {[e.id for e in entry.retracted_edges]} "
      f"(entrenchment 0.6 beat the 0.9 belief anchor)")
print(f"  disabled, not deleted: {state.lattice.disabled_edges}")
print(f"  contradictions now: {find_contradictions(state.evaluation, state.lattice)}")
for nid in ("rv-c1", "rv-c2"):
    print(f"  sigma({nid}) = {state.evaluation.scores[nid]:.3f} "
          f"[{state.evaluation.verdicts[nid]}]")

print()
print("step 3: the study fails replication -> reinstate the old view")
state = reinstate(state, entry.id, profile, bundle.sources, policy, bundle.lexicon)
restored_bytes = canonical_json(state.lattice.to_dict())
print(f"  lattice restored byte-for-byte: {restored_bytes == original_bytes}")
print(f"  revision log keeps the whole history ({len(state.revision_log)} entries):")
for e in state.revision_log:
    print(f"    #{e.id} {e.disposition:9} trigger={e.trigger_claim_id}")
