"""Core type invariants and lattice validation."""

import random

import pytest

from mevir import (
    AgentProfile,
    Claim,
    EvidenceEdge,
    FoundationVector,
    SourceRecord,
    TrustAnchor,
    TrustLattice,
    TrustPolicy,
    WeightRule,
    validate_lattice,
)

from conftest import random_scenario


def single_node_lattice() -> TrustLattice:
    return TrustLattice(
        id="L",
        target_claim_id="a",
        nodes={"a": Claim(id="a")},
        anchors={"a": TrustAnchor("a", "belief", base_strength=1.0)},
    )


def test_minimal_valid_lattice_has_empty_report():
    assert validate_lattice(single_node_lattice()) == []


def test_two_cycle_reported_with_both_nodes():
    lat = TrustLattice(
        id="L",
        target_claim_id="a",
        nodes={"a": Claim(id="a"), "b": Claim(id="b")},
        edges={
            "e1": EvidenceEdge(id="e1", from_id="a", to_id="b", kind="supports"),
            "e2": EvidenceEdge(id="e2", from_id="b", to_id="a", kind="supports"),
        },
    )
    report = validate_lattice(lat)
    cycles = [v for v in report if v.code == "cycle"]
    assert len(cycles) == 1
    assert set(cycles[0].subject_ids) == {"a", "b"}


def test_unanchored_leaf_reported():
    lat = TrustLattice(id="L", target_claim_id="a", nodes={"a": Claim(id="a")})
    report = validate_lattice(lat)
    assert [v.code for v in report] == ["missing-anchor"]
    assert report[0].subject_ids == ("a",)


def test_anchored_node_with_incoming_edge_reported():
    lat = TrustLattice(
        id="L",
        target_claim_id="a",
        nodes={"a": Claim(id="a"), "b": Claim(id="b")},
        edges={"e1": EvidenceEdge(id="e1", from_id="b", to_id="a", kind="supports")},
        anchors={
            "a": TrustAnchor("a", "belief", base_strength=0.5),
            "b": TrustAnchor("b", "belief", base_strength=0.5),
        },
    )
    assert any(v.code == "anchored-with-evidence" for v in validate_lattice(lat))


def test_dangling_edge_reported():
    lat = TrustLattice(
        id="L",
        target_claim_id="a",
        nodes={"a": Claim(id="a")},
        edges={"e1": EvidenceEdge(id="e1", from_id="ghost", to_id="a", kind="supports")},
        anchors={"a": TrustAnchor("a", "belief", base_strength=0.5)},
    )
    codes = [v.code for v in validate_lattice(lat)]
    assert "dangling-edge" in codes


def test_missing_target_reported():
    lat = TrustLattice(
        id="L",
        target_claim_id="ghost",
        nodes={"a": Claim(id="a")},
        anchors={"a": TrustAnchor("a", "belief", base_strength=0.5)},
    )
    assert any(v.code == "missing-target" for v in validate_lattice(lat))


def test_random_valid_lattices_validate_clean():
    rng = random.Random(7)
    for _ in range(100):
        lattice, *_ = random_scenario(rng, max_nodes=12)
        assert validate_lattice(lattice) == [], lattice.to_dict()


def test_injected_defects_are_caught():
    rng = random.Random(11)
    found_codes = set()
    for trial in range(120):
        lattice, *_ = random_scenario(rng, max_nodes=8)
        defect = rng.choice(("cycle", "drop-anchor", "dangle", "anchor-evidence"))
        lat = lattice.copy()
        if defect == "cycle":
            arg = [e for e in lat.argument_edges()]
            if not arg:
                continue
            e = rng.choice(arg)
            lat.edges["zz-cycle"] = EvidenceEdge(
                id="zz-cycle", from_id=e.to_id, to_id=e.from_id, kind="supports"
            )
            # reverse edge may hit an anchored node; a cycle must be found anyway
            expected = "cycle"
        elif defect == "drop-anchor":
            if not lat.anchors:
                continue
            del lat.anchors[rng.choice(sorted(lat.anchors))]
            expected = "missing-anchor"
        elif defect == "dangle":
            lat.edges["zz-dangle"] = EvidenceEdge(
                id="zz-dangle", from_id="nope", to_id=lat.target_claim_id, kind="supports"
            )
            expected = "dangling-edge"
        else:
            candidates = [n for n in lat.nodes if n not in lat.anchors]
            victims = [n for n in lat.anchors if lat.incoming(n) == []]
            if not candidates or not victims:
                continue
            donor = rng.choice(sorted(candidates))
            victim = rng.choice(sorted(victims))
            if donor == victim:
                continue
            lat.edges["zz-ae"] = EvidenceEdge(
                id="zz-ae", from_id=donor, to_id=victim, kind="supports"
            )
            expected = "anchored-with-evidence"
        codes = {v.code for v in validate_lattice(lat)}
        assert codes, f"defect {defect} not caught"
        assert expected in codes or "cycle" in codes
        found_codes.add(expected)
    assert {"cycle", "missing-anchor", "dangling-edge"} <= found_codes


def test_serialization_round_trip_all_types(rng):
    for _ in range(50):
        lattice, profile, sources, policy, _ = random_scenario(rng, max_nodes=10)
        assert TrustLattice.from_dict(lattice.to_dict()) == lattice
        assert AgentProfile.from_dict(profile.to_dict()) == profile
        assert TrustPolicy.from_dict(policy.to_dict()) == policy
        for s in sources.values():
            assert SourceRecord.from_dict(s.to_dict()) == s


def test_foundation_vector_rejects_out_of_range():
    with pytest.raises(ValueError):
        FoundationVector(care=1.5)
    with pytest.raises(ValueError):
        FoundationVector(liberty=-0.1)
    with pytest.raises(ValueError):
        FoundationVector(purity=float("nan"))


def test_claim_in_both_belief_maps_rejected():
    with pytest.raises(ValueError):
        AgentProfile(id="p", beliefs={"c": 0.5}, pretrusted={"c": 0.6})


def test_edge_self_loop_rejected():
    with pytest.raises(ValueError):
        EvidenceEdge(id="e", from_id="a", to_id="a", kind="supports")


def test_anchor_field_pairing_enforced():
    with pytest.raises(ValueError):
        TrustAnchor("n", "authority")  # missing source
    with pytest.raises(ValueError):
        TrustAnchor("n", "belief")  # missing strength


def test_weight_rule_first_match_wins():
    policy = TrustPolicy(
        id="p",
        weight_rules=(
            WeightRule(multiplier=0.2, evidence_kind="statistical"),
            WeightRule(multiplier=1.8, evidence_kind="statistical"),
        ),
    )
    claim = Claim(id="c", evidence_kind="statistical")
    assert policy.rule_multiplier(claim, None) == 0.2
    other = Claim(id="d", evidence_kind="opinion")
    assert policy.rule_multiplier(other, None) == 1.0


def test_source_predicate_rules_never_match_unsourced_claims():
    rule = WeightRule(multiplier=0.5, source_kind="media")
    assert not rule.matches(Claim(id="c"), None)
    src = SourceRecord(id="s", kind="media")
    assert rule.matches(Claim(id="c"), src)
