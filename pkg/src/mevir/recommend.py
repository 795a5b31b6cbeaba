"""Diverse authority recommendation for a topic.

Greedy max-min dispersion over ideological leaning: start from the most
reputable qualifying source, then repeatedly add the candidate farthest
(in minimum leaning distance) from everything already picked. Leaning is
the one perspective axis the source model carries, so it is the diversity
metric.
"""

from __future__ import annotations

from .model import SourceRecord


def recommend_authorities(
    topic: str,
    sources: dict[str, SourceRecord],
    k: int = 3,
    min_reputation: float = 0.5,
) -> list[str]:
    """Up to k source ids with expertise in `topic` and reputation at or
    above `min_reputation`, picked for credibility then leaning spread.
    Deterministic: ties fall back to reputation, then ascending id."""
    if k < 1:
        raise ValueError("k must be >= 1")
    candidates = sorted(
        (
            s for s in sources.values()
            if topic in s.expertise_domains and s.reputation >= min_reputation
        ),
        key=lambda s: s.id,
    )
    if not candidates:
        return []

    first = min(candidates, key=lambda s: (-s.reputation, s.id))
    picked = [first]
    remaining = [s for s in candidates if s.id != first.id]

    while remaining and len(picked) < k:
        def min_distance(s: SourceRecord) -> float:
            return min(abs(s.leaning - p.leaning) for p in picked)

        best = min(remaining, key=lambda s: (-min_distance(s), -s.reputation, s.id))
        picked.append(best)
        remaining = [s for s in remaining if s.id != best.id]

    return [s.id for s in picked]
