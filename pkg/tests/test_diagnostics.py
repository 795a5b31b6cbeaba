"""Bias detectors, insularity, and the composite diagnose."""

import pytest

from mevir import (
    AgentProfile,
    Claim,
    EvidenceEdge,
    SessionEvent,
    SessionLog,
    SourceRecord,
    TrustAnchor,
    TrustLattice,
    detect_availability,
    detect_bandwagon,
    detect_confirmation,
    detect_halo,
    detect_overconfidence,
    diagnose,
    insularity,
)
from mevir.diagnostics import leaning_bucket


def srcs(*leanings, kind="media", expertise=("politics",)) -> dict[str, SourceRecord]:
    return {
        f"s{i}": SourceRecord(id=f"s{i}", kind=kind, leaning=l, reputation=0.7,
                              expertise_domains=expertise)
        for i, l in enumerate(leanings)
    }


def consults(*specs) -> SessionLog:
    events = [
        SessionEvent("consulted", i + 1, claim, source_id=sid, supports_current_stance=sup)
        for i, (sid, claim, sup) in enumerate(specs)
    ]
    return SessionLog(id="sess", events=tuple(events))


class TestLeaningBuckets:
    def test_boundaries(self):
        assert leaning_bucket(-1.0) == "left"
        assert leaning_bucket(-1 / 3) == "center"
        assert leaning_bucket(1 / 3) == "center"
        assert leaning_bucket(0.34) == "right"
        assert leaning_bucket(-0.34) == "left"


class TestConfirmation:
    def test_three_left_confirming_flags_full_severity(self):
        sources = srcs(-0.9, -0.8, -0.95)
        session = consults(("s0", "c0", True), ("s1", "c1", True), ("s2", "c2", True))
        flag = detect_confirmation(session, sources)
        assert flag is not None
        assert flag.severity == pytest.approx(1.0)
        assert flag.mevir_diagnosis == "Corruption of Path 2"

    def test_spread_buckets_do_not_flag(self):
        sources = srcs(-0.9, 0.0, 0.8)
        session = consults(("s0", "c0", True), ("s1", "c1", True), ("s2", "c2", True))
        assert detect_confirmation(session, sources) is None

    def test_too_few_consults_do_not_flag(self):
        sources = srcs(-0.9, -0.8)
        session = consults(("s0", "c0", True), ("s1", "c1", True))
        assert detect_confirmation(session, sources) is None

    def test_contrary_consult_blocks_flag(self):
        sources = srcs(-0.9, -0.8, -0.95)
        session = consults(("s0", "c0", True), ("s1", "c1", False), ("s2", "c2", True))
        assert detect_confirmation(session, sources) is None


def story_lattice(evidence_kind: str) -> TrustLattice:
    return TrustLattice(
        id="L", target_claim_id="t",
        nodes={
            "t": Claim(id="t", topics=("economy",)),
            "story": Claim(id="story", topics=("economy",), evidence_kind=evidence_kind),
        },
        edges={"e": EvidenceEdge(id="e", from_id="story", to_id="t", kind="supports")},
        anchors={"story": TrustAnchor("story", "belief", base_strength=0.8)},
    )


class TestAvailability:
    def _session(self, n_consults: int) -> SessionLog:
        events = [
            SessionEvent("consulted", i + 1, "story", source_id="s0", supports_current_stance=True)
            for i in range(n_consults)
        ]
        events.append(SessionEvent("committed", n_consults + 1, "t", verdict="accepted"))
        return SessionLog(id="sess", events=tuple(events))

    def test_commit_after_one_anecdote_flags(self):
        flag = detect_availability(self._session(1), story_lattice("anecdotal"))
        assert flag is not None
        assert flag.mevir_diagnosis == "Corruption of the evidence base for Path 1"

    def test_statistical_consult_does_not_flag(self):
        assert detect_availability(self._session(1), story_lattice("statistical")) is None

    def test_many_consults_do_not_flag(self):
        lattice = story_lattice("anecdotal")
        session = SessionLog(id="sess", events=tuple(
            [SessionEvent("consulted", i, "story", source_id="s0", supports_current_stance=True)
             for i in range(1, 5)]
            + [SessionEvent("committed", 5, "t", verdict="accepted")]
        ))
        assert detect_availability(session, lattice) is None

    def test_commit_without_consult_does_not_flag(self):
        session = SessionLog(id="sess", events=(
            SessionEvent("committed", 1, "t", verdict="accepted"),
        ))
        assert detect_availability(session, story_lattice("anecdotal")) is None


def authority_lattice(source: SourceRecord, claim_topics=("public-health",)) -> TrustLattice:
    return TrustLattice(
        id="L", target_claim_id="t",
        nodes={
            "t": Claim(id="t", topics=claim_topics),
            "ev": Claim(id="ev", topics=claim_topics),
        },
        edges={"e": EvidenceEdge(id="e", from_id="ev", to_id="t", kind="supports")},
        anchors={"ev": TrustAnchor("ev", "authority", source_id=source.id)},
    )


class TestHalo:
    def test_out_of_domain_authority_flags(self):
        src = SourceRecord(id="guru", kind="individual_expert", expertise_domains=("business",))
        flags = detect_halo(authority_lattice(src), {"guru": src})
        assert len(flags) == 1
        assert flags[0].kind == "halo"
        assert flags[0].mevir_diagnosis == "Corruption of Path 2"

    def test_in_domain_authority_silent(self):
        src = SourceRecord(id="doc", kind="individual_expert", expertise_domains=("public-health",))
        assert detect_halo(authority_lattice(src), {"doc": src}) == []

    def test_no_authority_anchors_empty(self):
        lat = story_lattice("statistical")
        assert detect_halo(lat, {}) == []


class TestBandwagon:
    def test_crowd_source_flags(self):
        src = SourceRecord(id="poll", kind="crowd", expertise_domains=("public-health",))
        flags = detect_bandwagon(authority_lattice(src), {"poll": src})
        assert len(flags) == 1
        assert flags[0].kind == "bandwagon"

    def test_institution_silent(self):
        src = SourceRecord(id="inst", kind="institution", expertise_domains=("public-health",))
        assert detect_bandwagon(authority_lattice(src), {"inst": src}) == []

    def test_no_authority_anchor_empty(self):
        assert detect_bandwagon(story_lattice("statistical"), {}) == []


class TestOverconfidence:
    def test_incompetent_topic_without_deferral_flags(self):
        lat = story_lattice("anecdotal")  # topics: economy, belief-anchored
        profile = AgentProfile(id="p", competence_domains=("gardening",))
        flag = detect_overconfidence(lat, profile)
        assert flag is not None
        assert flag.mevir_diagnosis == "Misapplication of Path 1"

    def test_authority_anchor_suppresses(self):
        src = SourceRecord(id="doc", kind="individual_expert", expertise_domains=("public-health",))
        lat = authority_lattice(src)
        profile = AgentProfile(id="p", competence_domains=("gardening",))
        assert detect_overconfidence(lat, profile) is None

    def test_competent_topic_silent(self):
        lat = story_lattice("anecdotal")
        profile = AgentProfile(id="p", competence_domains=("economy",))
        assert detect_overconfidence(lat, profile) is None


class TestInsularity:
    def _lattice_with_sources(self, *leanings) -> tuple[TrustLattice, dict]:
        sources = srcs(*leanings)
        edges = {}
        nodes = {"t": Claim(id="t")}
        anchors = {}
        for i, sid in enumerate(sorted(sources)):
            nid = f"n{i}"
            nodes[nid] = Claim(id=nid)
            edges[f"e{i}"] = EvidenceEdge(
                id=f"e{i}", from_id=nid, to_id="t", kind="supports")
            edges[f"sf{i}"] = EvidenceEdge(
                id=f"sf{i}", from_id=sid, to_id=nid, kind="sourced_from")
            anchors[nid] = TrustAnchor(nid, "authority", source_id=sid)
        return TrustLattice(id="L", target_claim_id="t", nodes=nodes,
                            edges=edges, anchors=anchors), sources

    def test_single_bucket_is_one(self):
        lat, sources = self._lattice_with_sources(-0.9, -0.8, -0.7)
        assert insularity(lat, sources) == 1.0

    def test_two_to_one_split(self):
        lat, sources = self._lattice_with_sources(-0.9, -0.8, 0.9)
        assert insularity(lat, sources) == pytest.approx(2 / 3)

    def test_no_sources_zero(self):
        assert insularity(story_lattice("opinion"), {}) == 0.0


class TestDiagnose:
    def test_empty_inputs_empty_list(self):
        # anchor-free single node, empty session: nothing to flag
        lat = TrustLattice(id="L", target_claim_id="t", nodes={"t": Claim(id="t")})
        session = SessionLog(id="s", events=())
        flags = diagnose(session, lat, {}, AgentProfile(id="p", competence_domains=("x",)))
        assert flags == []

    def test_order_is_deterministic(self):
        src_a = SourceRecord(id="a-guru", kind="crowd", expertise_domains=("business",))
        lat = authority_lattice(src_a)
        sources = {"a-guru": src_a}
        profile = AgentProfile(id="p", competence_domains=("public-health",))
        flags1 = diagnose(None, lat, sources, profile)
        flags2 = diagnose(None, lat, sources, profile)
        assert [f.kind for f in flags1] == [f.kind for f in flags2] == ["bandwagon", "halo"]
