"""Scoring semantics: anchors, admissibility, edge weights, propagation."""

import random

import pytest

from mevir import (
    AgentProfile,
    Claim,
    EvidenceEdge,
    FoundationVector,
    InvalidLatticeError,
    MoralLexicon,
    SourceRecord,
    TrustAnchor,
    TrustLattice,
    TrustPolicy,
    WeightRule,
    admissible,
    anchor_score,
    default_policy,
    effective_edge_weight,
    evaluate,
)

from conftest import random_scenario
from reference import ref_evaluate_all


def lam0() -> TrustPolicy:
    return TrustPolicy(id="z", lambda_=0.0)


class TestAnchorScore:
    def test_belief_identity(self):
        a = TrustAnchor("n", "belief", base_strength=1.0)
        assert anchor_score(a, Claim(id="n"), AgentProfile(id="p"), {}, lam0()) == 1.0

    def test_authority_product(self):
        sources = {"s": SourceRecord(id="s", reputation=0.5)}
        profile = AgentProfile(id="p", source_trust={"s": {"default": 0.6}})
        a = TrustAnchor("n", "authority", source_id="s")
        assert anchor_score(a, Claim(id="n"), profile, sources, lam0()) == pytest.approx(0.30)

    def test_authority_prefers_topic_domain_trust(self):
        sources = {"s": SourceRecord(id="s", reputation=1.0)}
        profile = AgentProfile(id="p", source_trust={"s": {"default": 0.2, "health": 0.9}})
        a = TrustAnchor("n", "authority", source_id="s")
        claim = Claim(id="n", topics=("health", "politics"))
        assert anchor_score(a, claim, profile, sources, lam0()) == pytest.approx(0.9)

    def test_authority_unknown_profile_falls_back_to_half(self):
        sources = {"s": SourceRecord(id="s", reputation=0.8)}
        a = TrustAnchor("n", "authority", source_id="s")
        assert anchor_score(a, Claim(id="n"), AgentProfile(id="p"), sources, lam0()) == pytest.approx(0.4)

    def test_exhaustion_uses_policy_uncommitted(self):
        a = TrustAnchor("n", "evidence_exhausted")
        assert anchor_score(a, Claim(id="n"), AgentProfile(id="p"), {}, lam0()) == 0.5
        policy = TrustPolicy(id="u", uncommitted=0.2)
        assert anchor_score(a, Claim(id="n"), AgentProfile(id="p"), {}, policy) == 0.2


class TestAdmissible:
    def test_entry_restricts(self):
        policy = TrustPolicy(id="p", admissible_proxies={"legal-parentage": ("birth-certificate",)})
        assert not admissible(policy, "legal-parentage", "dna-test")
        assert admissible(policy, "legal-parentage", "birth-certificate")

    def test_absent_entry_is_open(self):
        assert admissible(default_policy(), "biological-event", "anything")

    def test_missing_tags_are_admissible(self):
        policy = TrustPolicy(id="p", admissible_proxies={"k": ("v",)})
        assert admissible(policy, None, "v")
        assert admissible(policy, "k", None)


class TestEffectiveEdgeWeight:
    def _edge(self, w=1.0, kind="supports"):
        return EvidenceEdge(id="e", from_id="c", to_id="t", kind=kind, declared_weight=w)

    def test_inadmissible_proxy_vetoes(self):
        policy = TrustPolicy(id="p", lambda_=0.0,
                             admissible_proxies={"tm": ("ok",)})
        child = Claim(id="c", proxy_kind="bad")
        target = Claim(id="t", truth_maker_kind="tm")
        w = effective_edge_weight(self._edge(), child, target, AgentProfile(id="a"), policy, {})
        assert w == 0.0

    def test_lambda_zero_collapses_blend(self):
        w = effective_edge_weight(
            self._edge(), Claim(id="c"), Claim(id="t"), AgentProfile(id="a"), lam0(), {}
        )
        assert w == 1.0

    def test_lambda_one_pure_congruence(self):
        lex = MoralLexicon(entries={"freedom": FoundationVector(liberty=1.0)})
        policy = TrustPolicy(id="p", lambda_=1.0)
        child = Claim(id="c", text="freedom")
        profile_match = AgentProfile(id="a", foundation_weights=FoundationVector(liberty=1.0))
        profile_clash = AgentProfile(id="b", foundation_weights=FoundationVector(care=1.0))
        w_match = effective_edge_weight(self._edge(), child, Claim(id="t"), profile_match, policy, {}, lex)
        w_clash = effective_edge_weight(self._edge(), child, Claim(id="t"), profile_clash, policy, {}, lex)
        assert w_match == pytest.approx(1.0)
        assert w_clash == pytest.approx(0.0)

    def test_cached_footprint_wins_over_text(self):
        lex = MoralLexicon(entries={"freedom": FoundationVector(liberty=1.0)})
        policy = TrustPolicy(id="p", lambda_=1.0)
        child = Claim(id="c", text="freedom", footprint=FoundationVector(care=1.0))
        profile = AgentProfile(id="a", foundation_weights=FoundationVector(care=1.0))
        w = effective_edge_weight(self._edge(), child, Claim(id="t"), profile, policy, {}, lex)
        assert w == pytest.approx(1.0)

    def test_rule_multiplier_with_source(self):
        policy = TrustPolicy(
            id="p", lambda_=0.0,
            weight_rules=(WeightRule(multiplier=0.25, source_kind="media"),),
        )
        sources = {"s": SourceRecord(id="s", kind="media")}
        w = effective_edge_weight(
            self._edge(), Claim(id="c"), Claim(id="t"), AgentProfile(id="a"),
            policy, sources, None, child_source_ids=("s",),
        )
        assert w == pytest.approx(0.25)


class TestEvaluate:
    def test_single_support_example(self):
        lat = TrustLattice(
            id="L", target_claim_id="t",
            nodes={"t": Claim(id="t"), "b": Claim(id="b")},
            edges={"e": EvidenceEdge(id="e", from_id="b", to_id="t", kind="supports")},
            anchors={"b": TrustAnchor("b", "belief", base_strength=0.8)},
        )
        res = evaluate(lat, AgentProfile(id="p"), {}, lam0())
        assert res.trace["t"].support == pytest.approx(0.8)
        assert res.trace["t"].attack == 0.0
        assert res.scores["t"] == pytest.approx(0.9)
        assert res.verdicts["t"] == "accepted"

    def test_support_and_attack_example(self):
        lat = TrustLattice(
            id="L", target_claim_id="t",
            nodes={"t": Claim(id="t"), "b": Claim(id="b"), "a": Claim(id="a")},
            edges={
                "e1": EvidenceEdge(id="e1", from_id="b", to_id="t", kind="supports"),
                "e2": EvidenceEdge(id="e2", from_id="a", to_id="t", kind="attacks"),
            },
            anchors={
                "b": TrustAnchor("b", "belief", base_strength=0.8),
                "a": TrustAnchor("a", "belief", base_strength=0.3),
            },
        )
        res = evaluate(lat, AgentProfile(id="p"), {}, lam0())
        assert res.trace["t"].support == pytest.approx(0.8)
        assert res.trace["t"].attack == pytest.approx(0.3)
        assert res.scores["t"] == pytest.approx(0.75)
        assert res.verdicts["t"] == "accepted"

    def test_uncommitted_anchor_rejected_at_threshold(self):
        lat = TrustLattice(
            id="L", target_claim_id="t",
            nodes={"t": Claim(id="t")},
            anchors={"t": TrustAnchor("t", "evidence_exhausted")},
        )
        res = evaluate(lat, AgentProfile(id="p"), {}, lam0())
        assert res.scores["t"] == 0.5
        assert res.verdicts["t"] == "rejected"

    def test_evidence_for_counts_as_support(self):
        lat = TrustLattice(
            id="L", target_claim_id="t",
            nodes={"t": Claim(id="t"), "b": Claim(id="b")},
            edges={"e": EvidenceEdge(id="e", from_id="b", to_id="t", kind="evidence_for")},
            anchors={"b": TrustAnchor("b", "belief", base_strength=0.8)},
        )
        res = evaluate(lat, AgentProfile(id="p"), {}, lam0())
        assert res.scores["t"] == pytest.approx(0.9)

    def test_invalid_lattice_rejected(self):
        lat = TrustLattice(id="L", target_claim_id="t", nodes={"t": Claim(id="t")})
        with pytest.raises(InvalidLatticeError):
            evaluate(lat, AgentProfile(id="p"), {}, lam0())

    def test_disabled_edge_contributes_nothing(self):
        lat = TrustLattice(
            id="L", target_claim_id="t",
            nodes={"t": Claim(id="t"), "b": Claim(id="b")},
            edges={"e": EvidenceEdge(id="e", from_id="b", to_id="t", kind="supports")},
            anchors={"b": TrustAnchor("b", "belief", base_strength=0.8)},
            disabled_edges=("e",),
        )
        res = evaluate(lat, AgentProfile(id="p"), {}, lam0())
        assert res.scores["t"] == 0.5

    def test_disabled_anchor_drops_node_to_prior(self):
        lat = TrustLattice(
            id="L", target_claim_id="t",
            nodes={"t": Claim(id="t")},
            anchors={"t": TrustAnchor("t", "belief", base_strength=0.9)},
            disabled_anchors=("t",),
        )
        res = evaluate(lat, AgentProfile(id="p"), {}, lam0())
        assert res.scores["t"] == 0.5


class TestProperties:
    def test_scores_in_unit_interval(self):
        rng = random.Random(5)
        for _ in range(300):
            lattice, profile, sources, policy, lexicon = random_scenario(rng, max_nodes=20)
            res = evaluate(lattice, profile, sources, policy, lexicon)
            assert all(0.0 <= s <= 1.0 for s in res.scores.values())

    def test_matches_naive_recursive_reference(self):
        rng = random.Random(6)
        for _ in range(200):
            lattice, profile, sources, policy, lexicon = random_scenario(rng, max_nodes=12)
            res = evaluate(lattice, profile, sources, policy, lexicon)
            ref = ref_evaluate_all(lattice, profile, sources, policy, lexicon)
            for nid, sigma in ref.items():
                assert res.scores[nid] == pytest.approx(sigma, abs=1e-9), nid

    def test_lambda_zero_ignores_lexicon_and_weights(self):
        rng = random.Random(8)
        for _ in range(60):
            lattice, profile, sources, policy, lexicon = random_scenario(rng, max_nodes=12)
            policy = TrustPolicy(
                id=policy.id, tau=policy.tau, prior=policy.prior,
                uncommitted=policy.uncommitted, lambda_=0.0,
                weight_rules=policy.weight_rules,
                admissible_proxies=policy.admissible_proxies,
            )
            base = evaluate(lattice, profile, sources, policy, lexicon)
            other_lex = MoralLexicon(entries={"zebra": FoundationVector(purity=1.0)})
            other_profile = AgentProfile(
                id=profile.id,
                foundation_weights=FoundationVector(care=1.0),
                source_trust=profile.source_trust,
                competence_domains=profile.competence_domains,
            )
            alt = evaluate(lattice, other_profile, sources, policy, other_lex)
            assert base.scores == alt.scores
            assert base.verdicts == alt.verdicts
            assert base.to_dict() == alt.to_dict()

    def test_support_monotone_attack_antitone(self):
        rng = random.Random(9)
        checked = 0
        while checked < 60:
            lattice, profile, sources, policy, lexicon = random_scenario(rng, max_nodes=10)
            target = lattice.target_claim_id
            if target in lattice.anchors:
                continue
            base = evaluate(lattice, profile, sources, policy, lexicon)

            def with_extra(kind: str) -> float:
                lat = lattice.copy()
                lat.nodes["zz-extra"] = Claim(id="zz-extra", text="freedom")
                lat.anchors["zz-extra"] = TrustAnchor("zz-extra", "belief", base_strength=0.9)
                lat.edges["zz-edge"] = EvidenceEdge(
                    id="zz-edge", from_id="zz-extra", to_id=target, kind=kind,
                    declared_weight=0.8,
                )
                return evaluate(lat, profile, sources, policy, lexicon).scores[target]

            assert with_extra("supports") >= base.scores[target] - 1e-12
            assert with_extra("attacks") <= base.scores[target] + 1e-12
            checked += 1
