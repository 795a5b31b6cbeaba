"""Lexicon-based moral content scoring and congruence between value vectors.

A lexicon maps lowercase phrases to per-foundation contributions. Scoring a
text is a greedy longest-match scan over its token stream: each token joins
at most one match, matched contributions are summed component-wise, and the
result is L1-normalized into a footprint. No stemming, no negation
handling, no learned models.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field

from .foundations import FOUNDATION_NAMES, FoundationVector

_TOKEN_SPLIT = re.compile(r"[\W_]+", re.UNICODE)

LEXICON_HEADER = ("phrase",) + FOUNDATION_NAMES


def tokenize(text: str) -> list[str]:
    """Lowercase and split on any non-alphanumeric character."""
    if not text:
        return []
    return [t for t in _TOKEN_SPLIT.split(text.lower()) if t]


@dataclass
class MoralLexicon:
    """Phrase -> foundation contribution table.

    Phrases are stored whitespace-normalized and lowercase; duplicate
    phrases are rejected so longest-first matching stays well-defined.
    """

    entries: dict[str, FoundationVector] = field(default_factory=dict)
    name: str = "unnamed"
    version: str = "0"

    def __post_init__(self):
        normalized: dict[str, FoundationVector] = {}
        for phrase, vec in self.entries.items():
            key = " ".join(tokenize(phrase))
            if not key:
                raise ValueError(f"lexicon {self.name}: empty phrase {phrase!r}")
            if key in normalized:
                raise ValueError(f"lexicon {self.name}: duplicate phrase {key!r}")
            if vec.is_zero():
                raise ValueError(f"lexicon {self.name}: phrase {key!r} contributes nothing")
            normalized[key] = vec
        self.entries = normalized

    def phrase_tokens(self) -> dict[tuple[str, ...], FoundationVector]:
        return {tuple(p.split(" ")): v for p, v in self.entries.items()}

    def max_phrase_len(self) -> int:
        return max((p.count(" ") + 1 for p in self.entries), default=0)

    def to_tsv(self) -> str:
        """Tab-separated form: header row then one phrase per line."""
        lines = ["\t".join(LEXICON_HEADER)]
        for phrase in sorted(self.entries):
            vec = self.entries[phrase]
            cells = [phrase] + [_format_score(v) for v in vec.as_tuple()]
            lines.append("\t".join(cells))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_tsv(cls, text: str, name: str = "unnamed", version: str = "0") -> "MoralLexicon":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        if not lines:
            raise ValueError("empty lexicon file")
        header = tuple(lines[0].rstrip("\n").split("\t"))
        if header != LEXICON_HEADER:
            raise ValueError(
                f"bad lexicon header: expected {list(LEXICON_HEADER)}, got {list(header)}"
            )
        entries: dict[str, FoundationVector] = {}
        for i, line in enumerate(lines[1:], start=2):
            cells = line.split("\t")
            if len(cells) != len(LEXICON_HEADER):
                raise ValueError(f"lexicon line {i}: expected {len(LEXICON_HEADER)} columns")
            phrase = cells[0]
            try:
                scores = [float(c) for c in cells[1:]]
            except ValueError as exc:
                raise ValueError(f"lexicon line {i}: {exc}") from exc
            entries[phrase] = FoundationVector(*scores)
        return cls(entries=entries, name=name, version=version)


def _format_score(v: float) -> str:
    return repr(v) if v != int(v) else str(int(v))


@dataclass
class Footprint:
    """Moral profile of a text: L1-normalized foundation vector plus how
    much of the text carried moral signal."""

    vector: FoundationVector
    intensity: float
    matched_count: int

    def to_dict(self) -> dict:
        return {
            "vector": self.vector.to_dict(),
            "intensity": self.intensity,
            "matched_count": self.matched_count,
        }


def compute_footprint(text: str, lexicon: MoralLexicon) -> Footprint:
    """Greedy longest-match scan, left to right, each token used once."""
    tokens = tokenize(text)
    table = lexicon.phrase_tokens()
    max_len = lexicon.max_phrase_len()

    raw = [0.0] * len(FOUNDATION_NAMES)
    matched_tokens = 0
    matched_count = 0
    i = 0
    while i < len(tokens):
        hit = None
        for length in range(min(max_len, len(tokens) - i), 0, -1):
            candidate = tuple(tokens[i : i + length])
            if candidate in table:
                hit = (length, table[candidate])
                break
        if hit is None:
            i += 1
            continue
        length, vec = hit
        for k, v in enumerate(vec.as_tuple()):
            raw[k] += v
        matched_tokens += length
        matched_count += 1
        i += length

    total = sum(raw)
    if total > 0.0:
        vector = FoundationVector(*(v / total for v in raw))
    else:
        vector = FoundationVector()
    intensity = matched_tokens / len(tokens) if tokens else 0.0
    return Footprint(vector=vector, intensity=intensity, matched_count=matched_count)


def moral_congruence(a: FoundationVector, b: FoundationVector) -> float:
    """Cosine similarity of two non-negative vectors, in [0,1].

    Either vector being all-zero means there is no moral signal to compare;
    that case is neutral (0.5) so it neither boosts nor vetoes evidence.
    """
    ta, tb = a.as_tuple(), b.as_tuple()
    na = math.sqrt(sum(x * x for x in ta))
    nb = math.sqrt(sum(x * x for x in tb))
    if na == 0.0 or nb == 0.0:
        return 0.5
    dot = sum(x * y for x, y in zip(ta, tb))
    return min(1.0, max(0.0, dot / (na * nb)))
