#!/usr/bin/env python3
"""Moral footprints: what intuitions a text is pulling on.

Scores a handful of charged texts against the demo lexicon and compares
their footprints with two very different reader profiles.
"""

from mevir import FoundationVector, MoralLexicon, compute_footprint, moral_congruence, tokenize
from mevir.fixtures import demo_lexicon_text

lexicon = MoralLexicon.from_tsv(demo_lexicon_text(), name="demo", version="1")

texts = [
    "My body my rules!",
    "Forced vaccination is rape.",
    "Clinical trials show the vaccine is safe and prevents disease harm for the vulnerable.",
    "We owe justice and care to future generations.",
    "A completely neutral sentence about the weather.",
]

liberty_reader = FoundationVector(liberty=0.9, purity=0.8, care=0.15)
care_reader = FoundationVector(care=0.9, authority=0.8, fairness_equity=0.7)

print("=" * 72)
print("tokenization is mechanical: lowercase, split on non-alphanumerics")
print("=" * 72)
print(f"{'COVID-19'!r:30} -> {tokenize('COVID-19')}")
print(f"{'My body, my rules!'!r:30} -> {tokenize('My body, my rules!')}")

print()
print("=" * 72)
print("footprints and how they land with two different readers")
print("=" * 72)
for text in texts:
    fp = compute_footprint(text, lexicon)
    top = sorted(fp.vector.to_dict().items(), key=lambda kv: -kv[1])[:3]
    top_str = ", ".join(f"{k}={v:.2f}" for k, v in top if v > 0) or "(no moral signal)"
    print(f"\n  {text!r}")
    print(f"    intensity {fp.intensity:.2f}, matches {fp.matched_count}: {top_str}")
    print(f"    congruence with liberty/purity reader: "
          f"{moral_congruence(fp.vector, liberty_reader):.3f}")
    print(f"    congruence with care/authority reader:  "
          f"{moral_congruence(fp.vector, care_reader):.3f}")

print()
print("Zero-signal texts land at 0.5 for everyone: no moral boost, no veto.")
