#!/usr/bin/env python3
"""Elaboration: recursive evidence search down to the five anchor kinds.

Builds lattices from a corpus under different budgets, showing where the
search stops (beliefs, authorities, exhaustion) and how a starved budget
turns frontier claims into resource-exhausted anchors. Ends with a DOT
export you can paste into any graphviz renderer.
"""

from mevir import (
    AgentProfile,
    Budget,
    Claim,
    ClaimCorpus,
    EvidenceEdge,
    SourceRecord,
    TrustPolicy,
    elaborate,
    evaluate,
    export_dot,
)

sources = {
    "obs": SourceRecord(id="obs", name="National Observatory", kind="institution",
                        expertise_domains=("astronomy",), reputation=0.9, public_faith=True),
}

corpus = ClaimCorpus(
    claims={
        "comet": Claim(id="comet", text="A comet will be visible next month.", topics=("astronomy",)),
        "orbit": Claim(id="orbit", text="Orbital projections place it near Earth.", topics=("astronomy",)),
        "photos": Claim(id="photos", text="Amateur photos already show the tail.", topics=("astronomy",),
                        evidence_kind="anecdotal"),
        "math": Claim(id="math", text="The projection follows standard mechanics.", topics=("astronomy",)),
        "archive": Claim(id="archive", text="The observatory archive confirms the trajectory.",
                         topics=("astronomy",), evidence_kind="official_record"),
    },
    links={
        "l1": EvidenceEdge(id="l1", from_id="orbit", to_id="comet", kind="supports"),
        "l2": EvidenceEdge(id="l2", from_id="photos", to_id="comet", kind="supports", declared_weight=0.6),
        "l3": EvidenceEdge(id="l3", from_id="math", to_id="orbit", kind="supports"),
        "l4": EvidenceEdge(id="l4", from_id="archive", to_id="orbit", kind="supports"),
        "sf1": EvidenceEdge(id="sf1", from_id="obs", to_id="archive", kind="sourced_from"),
    },
)

profile = AgentProfile(id="stargazer", beliefs={"math": 0.95})
policy = TrustPolicy(id="pol", lambda_=0.0)

for budget in (10, 1):
    lattice = elaborate(corpus, "comet", profile, policy, Budget(budget), sources)
    print("=" * 72)
    print(f"budget {budget}: lattice has {len(lattice.nodes)} nodes")
    print("=" * 72)
    for nid in sorted(lattice.nodes):
        anchor = lattice.anchors.get(nid)
        print(f"  {nid:8} {'<- ' + anchor.kind if anchor else '(expanded)'}")
    print()

lattice = elaborate(corpus, "comet", profile, policy, Budget(10), sources)
result = evaluate(lattice, profile, sources, policy)
print("=" * 72)
print("scores under the full lattice")
print("=" * 72)
for nid, sigma in sorted(result.scores.items()):
    print(f"  sigma({nid}) = {sigma:.4f} [{result.verdicts[nid]}]")

print()
print("DOT export (attack edges would be dashed red):")
print(export_dot(lattice, result))
