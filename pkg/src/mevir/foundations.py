"""Moral foundation vectors.

Seven non-negative components in a fixed canonical order: care, the two
fairness readings (equity vs. proportionality), liberty, loyalty, authority,
purity. Fairness is deliberately split in two because opposing camps in
polarized debates tend to invoke one reading each, and collapsing them
erases exactly the signal the engine needs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, fields

FOUNDATION_NAMES: tuple[str, ...] = (
    "care",
    "fairness_equity",
    "fairness_proportionality",
    "liberty",
    "loyalty",
    "authority",
    "purity",
)


@dataclass
class FoundationVector:
    """Unitless scores in [0,1], one per moral foundation."""

    care: float = 0.0
    fairness_equity: float = 0.0
    fairness_proportionality: float = 0.0
    liberty: float = 0.0
    loyalty: float = 0.0
    authority: float = 0.0
    purity: float = 0.0

    def __post_init__(self):
        for f in fields(self):
            v = getattr(self, f.name)
            if not isinstance(v, (int, float)) or not math.isfinite(v):
                raise ValueError(f"foundation {f.name} must be finite, got {v!r}")
            if not 0.0 <= v <= 1.0:
                raise ValueError(f"foundation {f.name} out of [0,1]: {v}")
            setattr(self, f.name, float(v))

    def as_tuple(self) -> tuple[float, ...]:
        return tuple(getattr(self, name) for name in FOUNDATION_NAMES)

    def l1(self) -> float:
        return sum(self.as_tuple())

    def is_zero(self) -> bool:
        return all(v == 0.0 for v in self.as_tuple())

    def to_dict(self) -> dict:
        return {name: getattr(self, name) for name in FOUNDATION_NAMES}

    @classmethod
    def from_dict(cls, d: dict) -> "FoundationVector":
        return cls(**{name: d.get(name, 0.0) for name in FOUNDATION_NAMES})


def zero_vector() -> FoundationVector:
    return FoundationVector()


def unit_vector(name: str, value: float = 1.0) -> FoundationVector:
    if name not in FOUNDATION_NAMES:
        raise ValueError(f"unknown foundation {name!r}")
    return FoundationVector(**{name: value})
