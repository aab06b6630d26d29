"""Effect-size and association statistics for proportion comparisons."""

from __future__ import annotations

import math


def cohens_h(p1: float, p2: float) -> float:
    """Arcsine-transformed difference of two proportions:
    h = 2*arcsin(sqrt(p1)) - 2*arcsin(sqrt(p2))."""
    for name, p in (("p1", p1), ("p2", p2)):
        if not 0.0 <= p <= 1.0:
            raise ValueError(f"{name} must be in [0, 1], got {p}")
    return 2.0 * math.asin(math.sqrt(p1)) - 2.0 * math.asin(math.sqrt(p2))


def chi_square_2x2(a: int, b: int, c: int, d: int) -> float:
    """Pearson chi-square for a 2x2 table [[a, b], [c, d]], no continuity
    correction; returns 0 when any margin is zero."""
    for count in (a, b, c, d):
        if count < 0:
            raise ValueError("counts must be non-negative")
    n = a + b + c + d
    denom = (a + b) * (c + d) * (a + c) * (b + d)
    if denom == 0:
        return 0.0
    return n * (a * d - b * c) ** 2 / denom
