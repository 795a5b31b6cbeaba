#!/usr/bin/env python3
"""Regenerates the bundled fixtures under src/mevir/data/.

Each bundle encodes one of the polarized-discourse scenarios the engine is
demonstrated on, together with the profiles and policies that drive the
expected outcomes. The script asserts every expectation while generating,
so a drifting engine or fixture is caught here rather than in CI archives.
"""

from __future__ import annotations

import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from mevir import (
    AgentProfile,
    Budget,
    Bundle,
    Claim,
    ClaimCorpus,
    EvidenceEdge,
    FoundationVector,
    MoralLexicon,
    SessionEvent,
    SessionLog,
    SourceRecord,
    TrustPolicy,
    WeightRule,
    diagnose,
    elaborate,
    evaluate,
    insularity,
)
from mevir.bundle import canonical_json, bundle_to_dict
from mevir.revision import EpistemicState

DATA_DIR = os.path.join(os.path.dirname(__file__), "..", "src", "mevir", "data")


def load_lexicon() -> MoralLexicon:
    with open(os.path.join(DATA_DIR, "demo_lexicon.tsv"), encoding="utf-8") as fh:
        return MoralLexicon.from_tsv(fh.read(), name="demo", version="1")


def state_for(bundle: Bundle, state_id: str, lattice, profile_id: str, policy_id: str) -> None:
    evaluation = evaluate(
        lattice, bundle.profiles[profile_id], bundle.sources,
        bundle.policies[policy_id], bundle.lexicon,
    )
    bundle.states[state_id] = EpistemicState(
        id=state_id, lattice=lattice, evaluation=evaluation,
        profile_id=profile_id, policy_id=policy_id,
    )


def write_bundle(bundle: Bundle, name: str) -> None:
    path = os.path.join(DATA_DIR, name)
    with open(path, "wb") as fh:
        fh.write(canonical_json(bundle_to_dict(bundle)))
    print(f"wrote {path}")


# ---------------------------------------------------------------------------
# vaccine-mandate case study


def make_vaccine() -> Bundle:
    lexicon = load_lexicon()
    sources = {
        "who": SourceRecord(
            id="who", name="World Health Organization", kind="institution",
            expertise_domains=("public-health", "vaccination"), leaning=0.0,
            reputation=0.95, public_faith=True,
        ),
        "voz-livre": SourceRecord(
            id="voz-livre", name="Voz Livre", kind="media",
            expertise_domains=("politics",), leaning=0.8, reputation=0.6,
        ),
        "med-assoc": SourceRecord(
            id="med-assoc", name="National Medical Association", kind="institution",
            expertise_domains=("public-health",), leaning=-0.1, reputation=0.9,
        ),
    }
    corpus = ClaimCorpus(
        claims={
            "vx-central": Claim(
                id="vx-central",
                text="Forced vaccination is rape.",
                topics=("public-health", "vaccination"),
                truth_maker_kind="bodily-violation",
                evidence_kind="opinion",
            ),
            "vx-sovereignty": Claim(
                id="vx-sovereignty",
                text="My body is sovereign and my choice is absolute; freedom from coercion is a fundamental right.",
                topics=("bodily-autonomy",),
                proxy_kind="political-philosophy",
                evidence_kind="opinion",
            ),
            "vx-testimony": Claim(
                id="vx-testimony",
                text="Testimonies describe forced injection as a violation of the pure body and a loss of liberty.",
                topics=("vaccination",),
                proxy_kind="testimonial",
                evidence_kind="testimonial",
            ),
            "vx-safety": Claim(
                id="vx-safety",
                text="Clinical trials show the vaccine is safe and prevents disease harm for the vulnerable.",
                topics=("public-health", "vaccination"),
                proxy_kind="clinical-trial",
                evidence_kind="statistical",
            ),
        },
        links={
            "ln-sov": EvidenceEdge(id="ln-sov", from_id="vx-sovereignty", to_id="vx-central", kind="supports"),
            "ln-test": EvidenceEdge(id="ln-test", from_id="vx-testimony", to_id="vx-central", kind="supports", declared_weight=0.9),
            "ln-safe": EvidenceEdge(id="ln-safe", from_id="vx-safety", to_id="vx-central", kind="attacks"),
            "sf-voz": EvidenceEdge(id="sf-voz", from_id="voz-livre", to_id="vx-testimony", kind="sourced_from"),
            "sf-who": EvidenceEdge(id="sf-who", from_id="who", to_id="vx-safety", kind="sourced_from"),
        },
    )
    profiles = {
        "builder-vaccine": AgentProfile(
            id="builder-vaccine",
            beliefs={"vx-sovereignty": 0.9},
        ),
        "adherent": AgentProfile(
            id="adherent",
            foundation_weights=FoundationVector(
                care=0.15, fairness_equity=0.1, fairness_proportionality=0.3,
                liberty=0.9, loyalty=0.3, authority=0.05, purity=0.8,
            ),
            source_trust={"who": {"default": 0.1}, "voz-livre": {"default": 0.9}},
            competence_domains=("politics",),
        ),
        "nonadherent": AgentProfile(
            id="nonadherent",
            foundation_weights=FoundationVector(
                care=0.9, fairness_equity=0.7, fairness_proportionality=0.4,
                liberty=0.15, loyalty=0.3, authority=0.8, purity=0.1,
            ),
            source_trust={"who": {"default": 0.95}, "voz-livre": {"default": 0.1}},
            competence_domains=("public-health",),
        ),
    }
    policies = {
        "policy-builder": TrustPolicy(id="policy-builder", lambda_=0.0),
        "policy-adherent": TrustPolicy(
            id="policy-adherent",
            lambda_=0.5,
            admissible_proxies={
                "bodily-violation": ("testimonial", "political-philosophy"),
            },
            weight_rules=(WeightRule(multiplier=0.3, source_kind="institution"),),
        ),
        "policy-nonadherent": TrustPolicy(
            id="policy-nonadherent",
            lambda_=0.5,
            admissible_proxies={
                "bodily-violation": ("clinical-trial", "epidemiological-study"),
            },
            weight_rules=(
                WeightRule(multiplier=0.3, evidence_kind="testimonial"),
                WeightRule(multiplier=0.5, source_kind="media", leaning=(0.5, 1.0)),
            ),
        ),
    }
    bundle = Bundle(
        id="vaccine-case", corpus=corpus, sources=sources,
        profiles=profiles, policies=policies, lexicon=lexicon,
    )
    lattice = elaborate(
        corpus, "vx-central", profiles["builder-vaccine"], policies["policy-builder"],
        Budget(10), sources,
    )
    state_for(bundle, "state-vaccine", lattice, "builder-vaccine", "policy-builder")

    adherent = evaluate(lattice, profiles["adherent"], sources, policies["policy-adherent"], lexicon)
    nonadherent = evaluate(lattice, profiles["nonadherent"], sources, policies["policy-nonadherent"], lexicon)
    assert adherent.verdicts["vx-central"] == "accepted", adherent.scores
    assert nonadherent.verdicts["vx-central"] == "rejected", nonadherent.scores
    print(f"  vaccine: adherent sigma={adherent.scores['vx-central']:.4f}, "
          f"nonadherent sigma={nonadherent.scores['vx-central']:.4f}")
    return bundle


# ---------------------------------------------------------------------------
# climate-policy case study


def make_climate() -> Bundle:
    fp = FoundationVector
    sources = {
        "ipcc": SourceRecord(
            id="ipcc", name="Intergovernmental Climate Panel", kind="institution",
            expertise_domains=("climate", "climate-policy"), leaning=-0.1,
            reputation=0.95, public_faith=True,
        ),
        "market-inst": SourceRecord(
            id="market-inst", name="Free Market Institute", kind="institution",
            expertise_domains=("economy", "climate-policy"), leaning=0.8, reputation=0.7,
        ),
        "relief-intl": SourceRecord(
            id="relief-intl", name="Relief International", kind="institution",
            expertise_domains=("climate", "humanitarian"), leaning=-0.6, reputation=0.8,
        ),
    }
    corpus = ClaimCorpus(
        claims={
            "cl-liberty": Claim(
                id="cl-liberty",
                text="Aggressive climate policy is an unacceptable infringement on liberty and a burden on national prosperity.",
                topics=("climate-policy",),
                truth_maker_kind="policy-outcome",
                evidence_kind="opinion",
                footprint=fp(liberty=0.7, loyalty=0.2, fairness_proportionality=0.1),
            ),
            "cl-cost": Claim(
                id="cl-cost",
                text="Economic studies show regulation cuts growth, burdens industry, and denies producers what they have earned.",
                topics=("economy",),
                proxy_kind="economic-study",
                evidence_kind="statistical",
                footprint=fp(fairness_proportionality=0.5, loyalty=0.3, liberty=0.2),
            ),
            "cl-sovereignty": Claim(
                id="cl-sovereignty",
                text="National sovereignty and free enterprise must be protected from global mandates.",
                topics=("economy",),
                proxy_kind="liberty-principle",
                evidence_kind="opinion",
                footprint=fp(liberty=0.5, loyalty=0.4, fairness_proportionality=0.1),
            ),
            "cl-impact": Claim(
                id="cl-impact",
                text="Reports document severe harm to vulnerable populations from a warming climate.",
                topics=("climate",),
                proxy_kind="ipcc-report",
                evidence_kind="statistical",
                footprint=fp(care=0.8, fairness_equity=0.2),
            ),
            "cl-moral": Claim(
                id="cl-moral",
                text="Failing to act on climate is a catastrophic moral failure toward the vulnerable and future generations.",
                topics=("climate-policy",),
                truth_maker_kind="policy-outcome",
                evidence_kind="opinion",
                footprint=fp(care=0.6, fairness_equity=0.4),
            ),
            "cl-warming": Claim(
                id="cl-warming",
                text="Temperature records show accelerating warming and extreme weather harming the vulnerable.",
                topics=("climate",),
                proxy_kind="ipcc-report",
                evidence_kind="statistical",
                footprint=fp(care=0.8, authority=0.2),
            ),
            "cl-duty": Claim(
                id="cl-duty",
                text="We owe justice and care to future generations; inaction places an unfair burden on the poor.",
                topics=("ethics",),
                proxy_kind="moral-principle",
                evidence_kind="opinion",
                footprint=fp(care=0.4, fairness_equity=0.6),
            ),
            "cl-uncertain": Claim(
                id="cl-uncertain",
                text="Studies argue climate models overstate risk and regulation costs outweigh benefits.",
                topics=("economy",),
                proxy_kind="economic-study",
                evidence_kind="statistical",
                footprint=fp(fairness_proportionality=0.6, liberty=0.4),
            ),
        },
        links={
            "ln-cost": EvidenceEdge(id="ln-cost", from_id="cl-cost", to_id="cl-liberty", kind="supports"),
            "ln-sov": EvidenceEdge(id="ln-sov", from_id="cl-sovereignty", to_id="cl-liberty", kind="supports", declared_weight=0.9),
            "ln-impact": EvidenceEdge(id="ln-impact", from_id="cl-impact", to_id="cl-liberty", kind="attacks"),
            "ln-warm": EvidenceEdge(id="ln-warm", from_id="cl-warming", to_id="cl-moral", kind="supports"),
            "ln-duty": EvidenceEdge(id="ln-duty", from_id="cl-duty", to_id="cl-moral", kind="supports", declared_weight=0.9),
            "ln-unc": EvidenceEdge(id="ln-unc", from_id="cl-uncertain", to_id="cl-moral", kind="attacks"),
            "sf-cost": EvidenceEdge(id="sf-cost", from_id="market-inst", to_id="cl-cost", kind="sourced_from"),
            "sf-impact": EvidenceEdge(id="sf-impact", from_id="ipcc", to_id="cl-impact", kind="sourced_from"),
            "sf-warm": EvidenceEdge(id="sf-warm", from_id="ipcc", to_id="cl-warming", kind="sourced_from"),
            "sf-unc": EvidenceEdge(id="sf-unc", from_id="market-inst", to_id="cl-uncertain", kind="sourced_from"),
        },
    )
    profiles = {
        "builder-climate": AgentProfile(
            id="builder-climate",
            beliefs={"cl-sovereignty": 0.85, "cl-duty": 0.85},
        ),
        "skeptic": AgentProfile(
            id="skeptic",
            foundation_weights=FoundationVector(
                care=0.1, fairness_equity=0.1, fairness_proportionality=0.8,
                liberty=0.9, loyalty=0.7, authority=0.4, purity=0.3,
            ),
            source_trust={
                "market-inst": {"default": 0.9},
                "ipcc": {"default": 0.15},
                "relief-intl": {"default": 0.2},
            },
        ),
        "activist": AgentProfile(
            id="activist",
            foundation_weights=FoundationVector(
                care=0.9, fairness_equity=0.9, fairness_proportionality=0.15,
                liberty=0.2, loyalty=0.2, authority=0.7, purity=0.2,
            ),
            source_trust={
                "market-inst": {"default": 0.1},
                "ipcc": {"default": 0.95},
                "relief-intl": {"default": 0.85},
            },
        ),
    }
    policies = {
        "policy-builder": TrustPolicy(id="policy-builder", lambda_=0.0),
        "policy-skeptic": TrustPolicy(
            id="policy-skeptic",
            lambda_=0.5,
            admissible_proxies={"policy-outcome": ("economic-study", "liberty-principle")},
            weight_rules=(WeightRule(multiplier=0.4, source_kind="institution", leaning=(-1.0, 0.0)),),
        ),
        "policy-activist": TrustPolicy(
            id="policy-activist",
            lambda_=0.5,
            admissible_proxies={"policy-outcome": ("ipcc-report", "moral-principle", "humanitarian-report")},
            weight_rules=(WeightRule(multiplier=0.3, source_kind="institution", leaning=(0.5, 1.0)),),
        ),
    }
    bundle = Bundle(
        id="climate-case", corpus=corpus, sources=sources,
        profiles=profiles, policies=policies,
    )
    builder = profiles["builder-climate"]
    policy_b = policies["policy-builder"]
    lat_a = elaborate(corpus, "cl-liberty", builder, policy_b, Budget(10), sources)
    lat_b = elaborate(corpus, "cl-moral", builder, policy_b, Budget(10), sources)
    state_for(bundle, "state-climate-liberty", lat_a, "builder-climate", "policy-builder")
    state_for(bundle, "state-climate-moral", lat_b, "builder-climate", "policy-builder")

    for lat, own, other in ((lat_a, "skeptic", "activist"), (lat_b, "activist", "skeptic")):
        own_eval = evaluate(lat, profiles[own], sources, policies[f"policy-{own}"], None)
        other_eval = evaluate(lat, profiles[other], sources, policies[f"policy-{other}"], None)
        assert own_eval.verdicts[lat.target_claim_id] == "accepted", (lat.id, own_eval.scores)
        assert other_eval.verdicts[lat.target_claim_id] == "rejected", (lat.id, other_eval.scores)
        print(f"  climate {lat.target_claim_id}: {own}={own_eval.scores[lat.target_claim_id]:.4f} "
              f"{other}={other_eval.scores[lat.target_claim_id]:.4f}")
    return bundle


# ---------------------------------------------------------------------------
# echo chamber


def make_echo() -> Bundle:
    sources = {
        "echo-net-a": SourceRecord(id="echo-net-a", name="Echo Network A", kind="media",
                                   expertise_domains=("politics",), leaning=0.8, reputation=0.7),
        "echo-net-b": SourceRecord(id="echo-net-b", name="Echo Network B", kind="media",
                                   expertise_domains=("politics",), leaning=0.9, reputation=0.65),
        "echo-net-c": SourceRecord(id="echo-net-c", name="Echo Network C", kind="media",
                                   expertise_domains=("politics",), leaning=0.7, reputation=0.6),
    }
    corpus = ClaimCorpus(
        claims={
            "ec-central": Claim(id="ec-central", text="The outgroup fabricates every report about us.",
                                topics=("politics",), evidence_kind="opinion"),
            "ec-a": Claim(id="ec-a", text="Network A says outgroup coverage is invented.",
                          topics=("politics",), evidence_kind="testimonial"),
            "ec-b": Claim(id="ec-b", text="Network B confirms the fabrication pattern.",
                          topics=("politics",), evidence_kind="testimonial"),
            "ec-c": Claim(id="ec-c", text="Network C reports the same fabrication.",
                          topics=("politics",), evidence_kind="testimonial"),
        },
        links={
            "ln-a": EvidenceEdge(id="ln-a", from_id="ec-a", to_id="ec-central", kind="supports"),
            "ln-b": EvidenceEdge(id="ln-b", from_id="ec-b", to_id="ec-central", kind="supports"),
            "ln-c": EvidenceEdge(id="ln-c", from_id="ec-c", to_id="ec-central", kind="supports"),
            "sf-a": EvidenceEdge(id="sf-a", from_id="echo-net-a", to_id="ec-a", kind="sourced_from"),
            "sf-b": EvidenceEdge(id="sf-b", from_id="echo-net-b", to_id="ec-b", kind="sourced_from"),
            "sf-c": EvidenceEdge(id="sf-c", from_id="echo-net-c", to_id="ec-c", kind="sourced_from"),
        },
    )
    profiles = {
        "echo-user": AgentProfile(
            id="echo-user",
            foundation_weights=FoundationVector(loyalty=0.9, authority=0.6, purity=0.5,
                                                care=0.2, fairness_equity=0.2,
                                                fairness_proportionality=0.4, liberty=0.5),
            source_trust={
                "echo-net-a": {"default": 0.9},
                "echo-net-b": {"default": 0.9},
                "echo-net-c": {"default": 0.9},
            },
            competence_domains=("politics",),
        ),
    }
    policies = {"policy-echo": TrustPolicy(id="policy-echo", lambda_=0.0)}
    bundle = Bundle(id="echo-chamber", corpus=corpus, sources=sources,
                    profiles=profiles, policies=policies)
    lattice = elaborate(corpus, "ec-central", profiles["echo-user"],
                        policies["policy-echo"], Budget(10), sources)
    state_for(bundle, "state-echo", lattice, "echo-user", "policy-echo")
    bundle.sessions["session-echo"] = SessionLog(
        id="session-echo",
        lattice_id=lattice.id,
        profile_id="echo-user",
        policy_id="policy-echo",
        events=(
            SessionEvent("consulted", 1, "ec-a", source_id="echo-net-a", supports_current_stance=True),
            SessionEvent("consulted", 2, "ec-b", source_id="echo-net-b", supports_current_stance=True),
            SessionEvent("consulted", 3, "ec-c", source_id="echo-net-c", supports_current_stance=True),
            SessionEvent("committed", 4, "ec-central", verdict="accepted"),
        ),
    )
    flags = diagnose(bundle.sessions["session-echo"], lattice, sources,
                     profiles["echo-user"], policies["policy-echo"])
    assert [f.kind for f in flags] == ["confirmation"], [f.kind for f in flags]
    assert insularity(lattice, sources) == 1.0
    print(f"  echo: flags={[f.kind for f in flags]}, insularity={insularity(lattice, sources)}")
    return bundle


# ---------------------------------------------------------------------------
# corrupted information ecosystem


def make_corrupted() -> Bundle:
    sources = {
        "ministry": SourceRecord(id="ministry", name="Ministry of Information", kind="government",
                                 expertise_domains=("economy", "politics"), leaning=0.9,
                                 reputation=0.9, public_faith=True,
                                 funding="state budget"),
        "state-tv": SourceRecord(id="state-tv", name="State Television", kind="media",
                                 expertise_domains=("politics",), leaning=0.9,
                                 reputation=0.85, public_faith=True,
                                 funding="state budget"),
    }
    corpus = ClaimCorpus(
        claims={
            "cor-central": Claim(id="cor-central", text="The economy has never been stronger.",
                                 topics=("economy",), evidence_kind="opinion"),
            "cor-stats": Claim(id="cor-stats", text="Official statistics show record growth.",
                               topics=("economy",), proxy_kind="official-statistics",
                               evidence_kind="official_record"),
            "cor-tv": Claim(id="cor-tv", text="News reports show thriving industry everywhere.",
                            topics=("economy",), proxy_kind="broadcast",
                            evidence_kind="testimonial"),
        },
        links={
            "ln-stats": EvidenceEdge(id="ln-stats", from_id="cor-stats", to_id="cor-central", kind="supports"),
            "ln-tv": EvidenceEdge(id="ln-tv", from_id="cor-tv", to_id="cor-central", kind="supports"),
            "sf-stats": EvidenceEdge(id="sf-stats", from_id="ministry", to_id="cor-stats", kind="sourced_from"),
            "sf-tv": EvidenceEdge(id="sf-tv", from_id="state-tv", to_id="cor-tv", kind="sourced_from"),
        },
    )
    profiles = {
        "virtuous-agent": AgentProfile(
            id="virtuous-agent",
            foundation_weights=FoundationVector(care=0.6, fairness_equity=0.5,
                                                fairness_proportionality=0.5, liberty=0.5,
                                                loyalty=0.4, authority=0.5, purity=0.3),
            competence_domains=("gardening",),
        ),
    }
    policies = {"policy-careful": TrustPolicy(id="policy-careful", lambda_=0.0)}
    bundle = Bundle(id="corrupted-ecosystem", corpus=corpus, sources=sources,
                    profiles=profiles, policies=policies)
    lattice = elaborate(corpus, "cor-central", profiles["virtuous-agent"],
                        policies["policy-careful"], Budget(10), sources)
    state_for(bundle, "state-corrupted", lattice, "virtuous-agent", "policy-careful")
    result = bundle.states["state-corrupted"].evaluation
    assert result.verdicts["cor-central"] == "accepted", result.scores
    print(f"  corrupted: sigma={result.scores['cor-central']:.4f} (accepted; ground truth false by construction)")
    return bundle


# ---------------------------------------------------------------------------
# diagnostics scenarios


def make_diagnostics() -> Bundle:
    sources = {
        "biz-guru": SourceRecord(id="biz-guru", name="Celebrated CEO", kind="individual_expert",
                                 expertise_domains=("business",), leaning=0.5, reputation=0.8),
        "crowd-poll": SourceRecord(id="crowd-poll", name="Open Web Poll", kind="crowd",
                                   expertise_domains=("public-health",), leaning=0.0, reputation=0.6),
        "left-med": SourceRecord(id="left-med", name="Left Daily", kind="media",
                                 expertise_domains=("economy",), leaning=-0.8, reputation=0.7),
        "left-med2": SourceRecord(id="left-med2", name="Left Weekly", kind="media",
                                  expertise_domains=("economy",), leaning=-0.7, reputation=0.7),
        "left-med3": SourceRecord(id="left-med3", name="Left Nightly", kind="media",
                                  expertise_domains=("economy",), leaning=-0.9, reputation=0.7),
        "center-news": SourceRecord(id="center-news", name="Center News", kind="media",
                                    expertise_domains=("economy",), leaning=0.0, reputation=0.7),
        "right-post": SourceRecord(id="right-post", name="Right Post", kind="media",
                                   expertise_domains=("economy",), leaning=0.8, reputation=0.7),
        "story-teller": SourceRecord(id="story-teller", name="Neighborhood Forum", kind="media",
                                     expertise_domains=("economy",), leaning=0.0, reputation=0.5),
    }
    corpus = ClaimCorpus(
        claims={
            "dx-conf": Claim(id="dx-conf", text="Policy X is ruining the economy.",
                             topics=("economy",), evidence_kind="opinion"),
            "dx-c1": Claim(id="dx-c1", text="Analysis one blames policy X.",
                           topics=("economy",), evidence_kind="statistical"),
            "dx-c2": Claim(id="dx-c2", text="Analysis two blames policy X.",
                           topics=("economy",), evidence_kind="statistical"),
            "dx-c3": Claim(id="dx-c3", text="Analysis three blames policy X.",
                           topics=("economy",), evidence_kind="statistical"),
            "dx-avail": Claim(id="dx-avail", text="Product Z causes illness.",
                              topics=("economy",), evidence_kind="opinion"),
            "dx-story": Claim(id="dx-story", text="My neighbor fell ill right after using product Z.",
                              topics=("economy",), evidence_kind="anecdotal"),
            "dx-halo": Claim(id="dx-halo", text="Vaccines cause chronic illness.",
                             topics=("public-health",), evidence_kind="opinion"),
            "dx-halo-ev": Claim(id="dx-halo-ev", text="A celebrated CEO says vaccines are dangerous.",
                                topics=("public-health",), evidence_kind="testimonial"),
            "dx-band": Claim(id="dx-band", text="Treatment Y is useless.",
                             topics=("public-health",), evidence_kind="opinion"),
            "dx-band-ev": Claim(id="dx-band-ev", text="Most people online agree treatment Y failed them.",
                                topics=("public-health",), evidence_kind="testimonial"),
            "dx-over": Claim(id="dx-over", text="This industrial solvent is safe to drink.",
                             topics=("chemistry",), evidence_kind="opinion"),
            "dx-over-ev": Claim(id="dx-over-ev", text="It looks clean and smells fine to me.",
                                topics=("chemistry",), evidence_kind="anecdotal"),
        },
        links={
            "ln-dc1": EvidenceEdge(id="ln-dc1", from_id="dx-c1", to_id="dx-conf", kind="supports"),
            "ln-dc2": EvidenceEdge(id="ln-dc2", from_id="dx-c2", to_id="dx-conf", kind="supports"),
            "ln-dc3": EvidenceEdge(id="ln-dc3", from_id="dx-c3", to_id="dx-conf", kind="supports"),
            "ln-story": EvidenceEdge(id="ln-story", from_id="dx-story", to_id="dx-avail", kind="supports"),
            "ln-halo": EvidenceEdge(id="ln-halo", from_id="dx-halo-ev", to_id="dx-halo", kind="supports"),
            "ln-band": EvidenceEdge(id="ln-band", from_id="dx-band-ev", to_id="dx-band", kind="supports"),
            "ln-over": EvidenceEdge(id="ln-over", from_id="dx-over-ev", to_id="dx-over", kind="supports"),
            "sf-halo": EvidenceEdge(id="sf-halo", from_id="biz-guru", to_id="dx-halo-ev", kind="sourced_from"),
            "sf-band": EvidenceEdge(id="sf-band", from_id="crowd-poll", to_id="dx-band-ev", kind="sourced_from"),
        },
    )
    profiles = {
        "builder-diag": AgentProfile(
            id="builder-diag",
            beliefs={"dx-c1": 0.8, "dx-c2": 0.8, "dx-c3": 0.8, "dx-story": 0.8, "dx-over-ev": 0.9},
            source_trust={"biz-guru": {"default": 0.9}, "crowd-poll": {"default": 0.9}},
        ),
        "ana": AgentProfile(
            id="ana",
            foundation_weights=FoundationVector(care=0.5, fairness_equity=0.5,
                                                fairness_proportionality=0.5, liberty=0.5,
                                                loyalty=0.5, authority=0.5, purity=0.5),
            competence_domains=("economy",),
        ),
    }
    policies = {"policy-diag": TrustPolicy(id="policy-diag", lambda_=0.0)}
    bundle = Bundle(id="diagnostics-scenarios", corpus=corpus, sources=sources,
                    profiles=profiles, policies=policies)
    builder = profiles["builder-diag"]
    policy = policies["policy-diag"]
    for target, state_id in (
        ("dx-conf", "state-conf"),
        ("dx-avail", "state-avail"),
        ("dx-halo", "state-halo"),
        ("dx-band", "state-band"),
        ("dx-over", "state-over"),
    ):
        lat = elaborate(corpus, target, builder, policy, Budget(10), sources)
        state_for(bundle, state_id, lat, "builder-diag", "policy-diag")

    sessions = {
        "session-confirmation": SessionLog(
            id="session-confirmation", lattice_id="lat-dx-conf",
            profile_id="ana", policy_id="policy-diag",
            events=(
                SessionEvent("consulted", 1, "dx-c1", source_id="left-med", supports_current_stance=True),
                SessionEvent("consulted", 2, "dx-c2", source_id="left-med2", supports_current_stance=True),
                SessionEvent("consulted", 3, "dx-c3", source_id="left-med3", supports_current_stance=True),
            ),
        ),
        "session-availability": SessionLog(
            id="session-availability", lattice_id="lat-dx-avail",
            profile_id="ana", policy_id="policy-diag",
            events=(
                SessionEvent("consulted", 1, "dx-story", source_id="story-teller", supports_current_stance=True),
                SessionEvent("committed", 2, "dx-avail", verdict="accepted"),
            ),
        ),
        "session-halo": SessionLog(
            id="session-halo", lattice_id="lat-dx-halo",
            profile_id="ana", policy_id="policy-diag", events=(),
        ),
        "session-bandwagon": SessionLog(
            id="session-bandwagon", lattice_id="lat-dx-band",
            profile_id="ana", policy_id="policy-diag", events=(),
        ),
        "session-overconfidence": SessionLog(
            id="session-overconfidence", lattice_id="lat-dx-over",
            profile_id="ana", policy_id="policy-diag", events=(),
        ),
        "session-diverse": SessionLog(
            id="session-diverse", lattice_id="lat-dx-conf",
            profile_id="ana", policy_id="policy-diag",
            events=(
                SessionEvent("consulted", 1, "dx-c1", source_id="left-med", supports_current_stance=True),
                SessionEvent("consulted", 2, "dx-c2", source_id="center-news", supports_current_stance=False),
                SessionEvent("consulted", 3, "dx-c3", source_id="right-post", supports_current_stance=True),
                SessionEvent("committed", 4, "dx-conf", verdict="rejected"),
            ),
        ),
    }
    bundle.sessions.update(sessions)

    expectations = {
        "session-confirmation": ["confirmation"],
        "session-availability": ["availability"],
        "session-halo": ["halo"],
        "session-bandwagon": ["bandwagon"],
        "session-overconfidence": ["overconfidence"],
        "session-diverse": [],
    }
    for sid, expected in expectations.items():
        session = bundle.sessions[sid]
        st = bundle.state_for_lattice(session.lattice_id)
        flags = diagnose(session, st.lattice, sources, profiles["ana"], policy)
        got = [f.kind for f in flags]
        assert got == expected, (sid, got)
    print("  diagnostics: all six scripted sessions behave")
    return bundle


# ---------------------------------------------------------------------------
# revision scenario


def make_revision() -> Bundle:
    sources = {
        "rv-src": SourceRecord(id="rv-src", name="Journal of Trials", kind="institution",
                               expertise_domains=("medicine",), leaning=0.0, reputation=0.9),
        "rv-blog": SourceRecord(id="rv-blog", name="Anonymous Blog", kind="anonymous",
                                expertise_domains=(), leaning=0.4, reputation=0.2),
    }
    corpus = ClaimCorpus(
        claims={
            "rv-c1": Claim(id="rv-c1", text="Treatment T is effective.",
                           topics=("medicine",), evidence_kind="opinion",
                           mutually_exclusive_with=("rv-c2",)),
            "rv-c2": Claim(id="rv-c2", text="Treatment T is harmful.",
                           topics=("medicine",), evidence_kind="opinion",
                           mutually_exclusive_with=("rv-c1",)),
            "rv-b1": Claim(id="rv-b1", text="Large trials show a strong effect for T.",
                           topics=("medicine",), evidence_kind="statistical",
                           proxy_kind="clinical-trial"),
        },
        links={
            "ln-b1": EvidenceEdge(id="ln-b1", from_id="rv-b1", to_id="rv-c1", kind="supports"),
            "ln-c2": EvidenceEdge(id="ln-c2", from_id="rv-c2", to_id="rv-c1", kind="attacks", declared_weight=0.2),
        },
    )
    profiles = {
        "clinician": AgentProfile(
            id="clinician",
            foundation_weights=FoundationVector(care=0.8, authority=0.6, fairness_equity=0.4,
                                                fairness_proportionality=0.4, liberty=0.3,
                                                loyalty=0.3, purity=0.2),
            beliefs={"rv-b1": 0.9},
            source_trust={"rv-src": {"default": 0.8}, "rv-blog": {"default": 0.5}},
            competence_domains=("medicine",),
        ),
    }
    policies = {"policy-clinical": TrustPolicy(id="policy-clinical", lambda_=0.0, ingest_threshold=0.3)}
    bundle = Bundle(id="revision-scenario", corpus=corpus, sources=sources,
                    profiles=profiles, policies=policies)
    lattice = elaborate(corpus, "rv-c1", profiles["clinician"],
                        policies["policy-clinical"], Budget(10), sources)
    state_for(bundle, "state-revision", lattice, "clinician", "policy-clinical")
    ev = bundle.states["state-revision"].evaluation
    assert ev.verdicts["rv-c1"] == "accepted", ev.scores
    assert ev.verdicts["rv-c2"] == "rejected", ev.scores
    print(f"  revision: rv-c1 sigma={ev.scores['rv-c1']:.4f}, rv-c2 sigma={ev.scores['rv-c2']:.4f}")
    return bundle


# ---------------------------------------------------------------------------
# manifest


MANIFEST = {
    "fixtures": [
        {
            "bundle": "vaccine.json",
            "notes": "Mandate-vs-rape framing: one lattice, two moral worlds. The adherent "
                     "admits only phenomenological proxies for the bodily-violation truth "
                     "maker; the non-adherent admits only clinical ones.",
            "rebuild": [
                {"target": "vx-central", "profile": "builder-vaccine",
                 "policy": "policy-builder", "budget": 10, "state": "state-vaccine"},
            ],
            "verdicts": [
                {"lattice": "lat-vx-central", "profile": "adherent", "policy": "policy-adherent",
                 "target": "vx-central", "expect": "accepted",
                 "notes": "liberty/purity-weighted policy; clinical attack is inadmissible"},
                {"lattice": "lat-vx-central", "profile": "nonadherent", "policy": "policy-nonadherent",
                 "target": "vx-central", "expect": "rejected",
                 "notes": "care/authority-weighted policy; testimonial support is inadmissible"},
            ],
            "diagnostics": [],
        },
        {
            "bundle": "climate.json",
            "notes": "Two opposed central claims, each accepted by its own camp and rejected "
                     "by the other on the same lattices.",
            "rebuild": [
                {"target": "cl-liberty", "profile": "builder-climate",
                 "policy": "policy-builder", "budget": 10, "state": "state-climate-liberty"},
                {"target": "cl-moral", "profile": "builder-climate",
                 "policy": "policy-builder", "budget": 10, "state": "state-climate-moral"},
            ],
            "verdicts": [
                {"lattice": "lat-cl-liberty", "profile": "skeptic", "policy": "policy-skeptic",
                 "target": "cl-liberty", "expect": "accepted", "notes": "own claim"},
                {"lattice": "lat-cl-liberty", "profile": "activist", "policy": "policy-activist",
                 "target": "cl-liberty", "expect": "rejected", "notes": "opposing claim"},
                {"lattice": "lat-cl-moral", "profile": "activist", "policy": "policy-activist",
                 "target": "cl-moral", "expect": "accepted", "notes": "own claim"},
                {"lattice": "lat-cl-moral", "profile": "skeptic", "policy": "policy-skeptic",
                 "target": "cl-moral", "expect": "rejected", "notes": "opposing claim"},
            ],
            "diagnostics": [],
        },
        {
            "bundle": "echo.json",
            "notes": "Fully self-referential lattice: every source sits in one leaning bucket.",
            "rebuild": [
                {"target": "ec-central", "profile": "echo-user",
                 "policy": "policy-echo", "budget": 10, "state": "state-echo"},
            ],
            "verdicts": [],
            "diagnostics": [
                {"session": "session-echo", "lattice": "lat-ec-central",
                 "expect_flags": ["confirmation"], "expect_insularity": 1.0},
            ],
        },
        {
            "bundle": "corrupted.json",
            "notes": "A careful agent inside a state-controlled information ecosystem. The "
                     "engine accepts the central claim; its falsity is external to the engine "
                     "(every available proxy is compromised by construction).",
            "rebuild": [
                {"target": "cor-central", "profile": "virtuous-agent",
                 "policy": "policy-careful", "budget": 10, "state": "state-corrupted"},
            ],
            "verdicts": [
                {"lattice": "lat-cor-central", "profile": "virtuous-agent", "policy": "policy-careful",
                 "target": "cor-central", "expect": "accepted",
                 "notes": "accepted-but-false: ground truth recorded here, not computed"},
            ],
            "diagnostics": [],
        },
        {
            "bundle": "diagnostics.json",
            "notes": "One scripted session per bias detector plus a diverse control.",
            "rebuild": [],
            "verdicts": [],
            "diagnostics": [
                {"session": "session-confirmation", "lattice": "lat-dx-conf",
                 "expect_flags": ["confirmation"], "expect_insularity": None},
                {"session": "session-availability", "lattice": "lat-dx-avail",
                 "expect_flags": ["availability"], "expect_insularity": None},
                {"session": "session-halo", "lattice": "lat-dx-halo",
                 "expect_flags": ["halo"], "expect_insularity": None},
                {"session": "session-bandwagon", "lattice": "lat-dx-band",
                 "expect_flags": ["bandwagon"], "expect_insularity": None},
                {"session": "session-overconfidence", "lattice": "lat-dx-over",
                 "expect_flags": ["overconfidence"], "expect_insularity": None},
                {"session": "session-diverse", "lattice": "lat-dx-conf",
                 "expect_flags": [], "expect_insularity": None},
            ],
        },
        {
            "bundle": "revision.json",
            "notes": "Belief-revision playground: rv-c1 and rv-c2 are mutually exclusive; "
                     "trusted contrary evidence triggers a minimal retraction.",
            "rebuild": [
                {"target": "rv-c1", "profile": "clinician",
                 "policy": "policy-clinical", "budget": 10, "state": "state-revision"},
            ],
            "verdicts": [
                {"lattice": "lat-rv-c1", "profile": "clinician", "policy": "policy-clinical",
                 "target": "rv-c1", "expect": "accepted", "notes": "pre-revision baseline"},
            ],
            "diagnostics": [],
        },
    ],
}


def main() -> None:
    print("generating fixtures:")
    write_bundle(make_vaccine(), "vaccine.json")
    write_bundle(make_climate(), "climate.json")
    write_bundle(make_echo(), "echo.json")
    write_bundle(make_corrupted(), "corrupted.json")
    write_bundle(make_diagnostics(), "diagnostics.json")
    write_bundle(make_revision(), "revision.json")
    with open(os.path.join(DATA_DIR, "manifest.json"), "wb") as fh:
        fh.write(canonical_json(MANIFEST))
    print("wrote manifest.json")


if __name__ == "__main__":
    main()
