#!/usr/bin/env python3
"""One lattice, two verdicts: the vaccine-mandate case study.

The same evidence structure is evaluated under two profile/policy pairs.
Each side's admissibility table vetoes the other side's proxies, each
side trusts different authorities, and the moral blend amplifies content
that matches the reader's own foundations. The result: the same central
claim is accepted by one agent and rejected by the other.
"""

from mevir import evaluate
from mevir.bundle import canonical_json
from mevir.fixtures import load_fixture

bundle = load_fixture("vaccine.json")
state = bundle.states["state-vaccine"]
lattice = state.lattice
target = lattice.target_claim_id

print("=" * 72)
print(f"lattice {lattice.id}: {len(lattice.nodes)} claims, "
      f"{len(lattice.argument_edges())} evidence edges")
print("=" * 72)
for nid in sorted(lattice.nodes):
    anchor = lattice.anchors.get(nid)
    tag = f"[{anchor.kind}]" if anchor else "[derived]"
    print(f"  {tag:22} {nid}: {lattice.nodes[nid].text[:60]}")

lattice_bytes = canonical_json(lattice.to_dict())

for side, policy_id in (("adherent", "policy-adherent"), ("nonadherent", "policy-nonadherent")):
    profile = bundle.profile(side)
    policy = bundle.policy(policy_id)
    result = evaluate(lattice, profile, bundle.sources, policy, bundle.lexicon)
    print()
    print("=" * 72)
    print(f"{side}: admissible proxies for 'bodily-violation' = "
          f"{list(policy.admissible_proxies.get('bodily-violation', ()))}")
    print("=" * 72)
    trace = result.trace[target]
    for eid, w in sorted(trace.edge_weights.items()):
        edge = lattice.edges[eid]
        note = "VETOED (ontologically irrelevant)" if w == 0.0 else f"effective weight {w:.3f}"
        print(f"  {edge.kind:9} from {edge.from_id:15} -> {note}")
    print(f"  aggregate support {trace.support:.3f}, attack {trace.attack:.3f}")
    print(f"  sigma({target}) = {result.scores[target]:.4f} -> {result.verdicts[target].upper()}")

assert canonical_json(lattice.to_dict()) == lattice_bytes
print()
print("The lattice bytes never changed; only the evaluating agent did.")
