"""Published Bethe-ansatz examples: one entry per (sector, root set)."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction as F


@dataclass(frozen=True)
class Row:
    lam: int
    mu: int
    L: int
    M: int
    e: tuple
    y: F


ROWS = (
    Row(1, 0, 1, 0, (), F(5, 64)),
    Row(2, 1, 1, 2, (F(2, 3), F(-13, 36)), F(31, 192)),
    Row(2, 1, 2, 1, (F(-5, 18),), F(-35, 64)),
    Row(2, 1, 3, 0, (), F(37, 64)),
    Row(2, 2, 0, 4, (F(4, 3), F(-97, 90), F(-11, 5), F(521, 3600)), F(29, 64)),
    Row(2, 2, 2, 2, (F(2, 3), F(-7, 12)), F(29, 64)),
    Row(2, 2, 2, 2, (F(-6, 7), F(-29, 196)), F(-99, 64)),
    Row(2, 2, 3, 1, (F(-1, 2),), F(-75, 64)),
    Row(2, 2, 4, 0, (), F(69, 64)),
)


def sectors() -> list[tuple[int, int, int]]:
    seen = []
    for r in ROWS:
        if (r.lam, r.mu, r.L) not in seen:
            seen.append((r.lam, r.mu, r.L))
    return seen
