#!/usr/bin/env python3
"""Bias nudges and the way out of an echo chamber.

Replays the scripted diagnostic sessions (one per detector), shows the
diverse control staying silent, measures the echo-chamber fixture's
insularity, and asks the recommender for ideologically spread authorities
— the concrete escape hatch a nudge offers.
"""

from mevir import diagnose, insularity, recommend_authorities
from mevir.fixtures import load_fixture

bundle = load_fixture("diagnostics.json")

print("=" * 72)
print("scripted sessions, one per heuristic")
print("=" * 72)
for sid in (
    "session-confirmation", "session-availability", "session-halo",
    "session-bandwagon", "session-overconfidence", "session-diverse",
):
    session = bundle.sessions[sid]
    st = bundle.state_for_lattice(session.lattice_id)
    flags = diagnose(session, st.lattice, bundle.sources,
                     bundle.profile(session.profile_id),
                     bundle.policy(session.policy_id))
    label = ", ".join(f.kind for f in flags) or "(clean)"
    print(f"\n  {sid}: {label}")
    for f in flags:
        print(f"    [{f.mevir_diagnosis}]")
        print(f"    {f.explanation[:100]}...")

echo = load_fixture("echo.json")
st = echo.states["state-echo"]
print()
print("=" * 72)
print("echo chamber: every referenced source in one leaning bucket")
print("=" * 72)
print(f"  insularity = {insularity(st.lattice, echo.sources):.2f} (1.0 = fully closed)")
session = echo.sessions["session-echo"]
flags = diagnose(session, st.lattice, echo.sources,
                 echo.profile("echo-user"), echo.policy("policy-echo"))
print(f"  flags: {[f.kind for f in flags]}")

print()
print("=" * 72)
print("the way out: diverse, credible authorities for the topic")
print("=" * 72)
vaccine = load_fixture("vaccine.json")
picks = recommend_authorities("public-health", vaccine.sources, k=3, min_reputation=0.5)
for sid in picks:
    src = vaccine.sources[sid]
    print(f"  {src.name:35} reputation {src.reputation:.2f}, leaning {src.leaning:+.1f}")
