"""Bundled scenario fixtures and their expectation runner.

The package ships executable encodings of the polarized-discourse
scenarios (vaccine mandate, climate policy, echo chamber, corrupted
ecosystem, bias sessions, revision playground) as bundle JSON files plus a
manifest of expected outcomes. `run_all` replays every expectation against
the engine and reports mismatches; a green run means the shipped data and
the engine still agree.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from typing import Optional

from .bundle import Bundle, parse_bundle
from .diagnostics import diagnose, insularity
from .elaboration import Budget, elaborate
from .evaluation import evaluate

FIXTURE_NAMES = (
    "vaccine.json",
    "climate.json",
    "echo.json",
    "corrupted.json",
    "diagnostics.json",
    "revision.json",
)


def _data_text(name: str) -> str:
    return resources.files("mevir").joinpath("data").joinpath(name).read_text("utf-8")


def load_fixture(name: str) -> Bundle:
    """Load a shipped fixture bundle by file name (e.g. 'vaccine.json')."""
    return parse_bundle(_data_text(name))


def load_manifest() -> dict:
    return json.loads(_data_text("manifest.json"))


def demo_lexicon_text() -> str:
    return _data_text("demo_lexicon.tsv")


@dataclass
class FixtureExpectation:
    """One checkable claim about a fixture bundle."""

    bundle: str
    kind: str  # "rebuild" | "verdict" | "diagnostics"
    profile: Optional[str] = None
    policy: Optional[str] = None
    target: Optional[str] = None
    lattice: Optional[str] = None
    session: Optional[str] = None
    expect_verdict: Optional[str] = None
    expect_flags: Optional[list[str]] = None
    expect_insularity: Optional[float] = None
    budget: int = 10
    state: Optional[str] = None
    notes: str = ""


@dataclass
class FixtureReport:
    expectation: FixtureExpectation
    passed: bool
    mismatches: list[str] = field(default_factory=list)


def manifest_expectations(manifest: Optional[dict] = None) -> list[FixtureExpectation]:
    manifest = manifest or load_manifest()
    out: list[FixtureExpectation] = []
    for fx in manifest["fixtures"]:
        name = fx["bundle"]
        for r in fx.get("rebuild", []):
            out.append(FixtureExpectation(
                bundle=name, kind="rebuild", target=r["target"], profile=r["profile"],
                policy=r["policy"], budget=r["budget"], state=r["state"],
            ))
        for v in fx.get("verdicts", []):
            out.append(FixtureExpectation(
                bundle=name, kind="verdict", lattice=v["lattice"], profile=v["profile"],
                policy=v["policy"], target=v["target"], expect_verdict=v["expect"],
                notes=v.get("notes", ""),
            ))
        for d in fx.get("diagnostics", []):
            out.append(FixtureExpectation(
                bundle=name, kind="diagnostics", session=d["session"], lattice=d["lattice"],
                expect_flags=list(d["expect_flags"]),
                expect_insularity=d.get("expect_insularity"),
            ))
    return out


def run_fixture(expectation: FixtureExpectation, bundle: Optional[Bundle] = None) -> FixtureReport:
    """Replay one expectation; mismatches are reported, not raised."""
    bundle = bundle or load_fixture(expectation.bundle)
    mismatches: list[str] = []

    if expectation.kind == "rebuild":
        stored = bundle.states[expectation.state]
        rebuilt = elaborate(
            bundle.corpus, expectation.target, bundle.profile(expectation.profile),
            bundle.policy(expectation.policy), Budget(expectation.budget), bundle.sources,
        )
        if rebuilt.to_dict() != stored.lattice.to_dict():
            mismatches.append(
                f"elaboration of {expectation.target} no longer reproduces stored lattice "
                f"{stored.lattice.id}"
            )
    elif expectation.kind == "verdict":
        st = bundle.state_for_lattice(expectation.lattice)
        if st is None:
            mismatches.append(f"lattice {expectation.lattice} missing")
        else:
            result = evaluate(
                st.lattice, bundle.profile(expectation.profile), bundle.sources,
                bundle.policy(expectation.policy), bundle.lexicon,
            )
            got = result.verdicts.get(expectation.target)
            if got != expectation.expect_verdict:
                mismatches.append(
                    f"{expectation.target} under {expectation.profile}/{expectation.policy}: "
                    f"expected {expectation.expect_verdict}, got {got} "
                    f"(sigma={result.scores.get(expectation.target)})"
                )
    elif expectation.kind == "diagnostics":
        session = bundle.sessions[expectation.session]
        st = bundle.state_for_lattice(expectation.lattice)
        profile = bundle.profiles.get(session.profile_id or (st.profile_id if st else ""))
        policy = bundle.policies.get(session.policy_id or (st.policy_id if st else ""))
        flags = diagnose(session, st.lattice if st else None, bundle.sources, profile, policy)
        got = [f.kind for f in flags]
        if got != expectation.expect_flags:
            mismatches.append(
                f"session {expectation.session}: expected flags {expectation.expect_flags}, got {got}"
            )
        if expectation.expect_insularity is not None and st is not None:
            ins = insularity(st.lattice, bundle.sources)
            if abs(ins - expectation.expect_insularity) > 0.0:
                mismatches.append(
                    f"session {expectation.session}: expected insularity "
                    f"{expectation.expect_insularity}, got {ins}"
                )
    else:
        mismatches.append(f"unknown expectation kind {expectation.kind!r}")

    return FixtureReport(expectation=expectation, passed=not mismatches, mismatches=mismatches)


def run_all() -> list[FixtureReport]:
    reports = []
    bundles: dict[str, Bundle] = {}
    for exp in manifest_expectations():
        if exp.bundle not in bundles:
            bundles[exp.bundle] = load_fixture(exp.bundle)
        reports.append(run_fixture(exp, bundles[exp.bundle]))
    return reports
