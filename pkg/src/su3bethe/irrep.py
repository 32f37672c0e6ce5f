"""Closed-form data for su(3) irreps in the SU(3) > SO(3) reduction.

Everything here is exact: scalars are :class:`fractions.Fraction`.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, fields
from fractions import Fraction
from typing import Optional

Rational = Fraction


def _sign(n: int) -> int:
    """(-1)**n for any integer n, including negative ones."""
    return -1 if n % 2 else 1


def _positive_part(q: Fraction) -> int:
    """Zero for negative arguments, integer part otherwise."""
    return 0 if q < 0 else math.floor(q)


@dataclass(frozen=True, order=True)
class IrrepLabel:
    lam: int
    mu: int

    def __post_init__(self):
        if self.lam < 0 or self.mu < 0:
            raise ValueError(f"irrep labels must be non-negative, got ({self.lam}, {self.mu})")

    def __str__(self):
        return f"({self.lam},{self.mu})"


@dataclass(frozen=True)
class WeightData:
    """Eigenvalues of E11, E22, E33 on the highest weight vector."""
    alpha11: Fraction
    alpha22: Fraction
    alpha33: Fraction


def highest_weight(irrep: IrrepLabel) -> WeightData:
    lam, mu = irrep.lam, irrep.mu
    a11 = Fraction(mu + 2 * lam, 3)
    a22 = Fraction(mu - lam, 3)
    return WeightData(a11, a22, -a11 - a22)


def casimirs(irrep: IrrepLabel) -> tuple[Fraction, Fraction]:
    """Values (g2, g3) of the quadratic and cubic Casimirs on the irrep."""
    lam, mu = irrep.lam, irrep.mu
    g2 = Fraction(4, 3) * (lam * lam + mu * mu + lam * mu + 3 * lam + 3 * mu)
    g3 = Fraction(8, 27) * (lam - mu) * (3 + lam + 2 * mu) * (3 + 2 * lam + mu)
    return g2, g3


def dimension(irrep: IrrepLabel) -> int:
    lam, mu = irrep.lam, irrep.mu
    return (mu + 1) * (lam + 1) * (lam + mu + 2) // 2


def so3_multiplicity(irrep: IrrepLabel, L: int) -> int:
    """Number of copies of the spin-L irrep of SO(3) inside (lam, mu)."""
    if L < 0:
        return 0
    lam, mu = irrep.lam, irrep.mu
    d = (_positive_part(Fraction(lam + mu - L + 2, 2))
         - _positive_part(Fraction(lam - L + 1, 2))
         - _positive_part(Fraction(mu - L + 1, 2)))
    return max(d, 0)


def so3_content(irrep: IrrepLabel) -> dict[int, int]:
    """Map L -> multiplicity for every L that occurs."""
    out = {}
    for L in range(irrep.lam + irrep.mu + 1):
        d = so3_multiplicity(irrep, L)
        if d:
            out[L] = d
    return out


def alpha_range(lam: int, mu: int, L: int) -> Optional[tuple[int, int]]:
    """Integer interval of the Bargmann-Moshinsky label alpha, or None if empty."""
    lo = max(Fraction(0), Fraction(lam - L, 2) + Fraction(1 - _sign(lam - L), 4))
    hi = min(Fraction(lam - 1, 2) + Fraction(_sign(mu + L) * (_sign(lam) + 1), 4),
             Fraction(lam + mu - L, 2) + Fraction(_sign(lam + mu + L) - 1, 4))
    amin, amax = math.ceil(lo), math.floor(hi)
    if amax < amin:
        return None
    return amin, amax


def multiplicity_by_min(lam: int, mu: int, L: int) -> int:
    """Alternative count of alpha values, as the minimum of four candidates.

    The candidates are the four quantities permuted by the symmetry maps r and s.
    """
    c = _multiplicity_candidates(lam, mu, L)
    return max(min(c), 0)


def _multiplicity_candidates(lam, mu, L):
    return (
        Fraction(L, 2) + Fraction(1, 4) + Fraction(_sign(L) * (_sign(lam) + _sign(mu) + _sign(lam + mu)), 4),
        Fraction(mu, 2) + Fraction(1, 2) + Fraction(_sign(lam + L) * (1 + _sign(mu)), 4),
        Fraction(lam + 1, 2) + Fraction(_sign(mu + L) * (_sign(lam) + 1), 4),
        Fraction(lam + mu - L, 2) + Fraction(_sign(lam + mu + L) + 3, 4),
    )


def symmetry_map_r(lam: int, mu: int, L: int) -> tuple[int, int, int]:
    Lp = lam + mu - L + 1 - (_sign(lam + L) + _sign(mu + L)) // 2
    return lam, mu, Lp


def symmetry_map_s(lam: int, mu: int, L: int) -> tuple[int, int, int]:
    k = (1 - _sign(lam + L)) // 2
    return L - k, lam + mu - L + k, lam + k


@dataclass(frozen=True)
class Sector:
    """One missing-label block: the spin-L copies inside (lam, mu)."""
    irrep: IrrepLabel
    L: int
    multiplicity: int
    alpha_min: Optional[int]
    alpha_max: Optional[int]
    parity: str

    @property
    def lam(self):
        return self.irrep.lam

    @property
    def mu(self):
        return self.irrep.mu

    @property
    def M(self) -> int:
        """Number of Bethe roots attached to this sector."""
        return self.irrep.lam + self.irrep.mu - self.L

    @property
    def alphas(self) -> range:
        if not self.multiplicity:
            return range(0)
        return range(self.alpha_min, self.alpha_max + 1)

    @property
    def Lsq(self) -> int:
        return self.L * (self.L + 1)


def make_sector(lam: int, mu: int, L: int) -> Sector:
    irrep = IrrepLabel(lam, mu)
    if L < 0:
        raise ValueError("L must be non-negative")
    d = so3_multiplicity(irrep, L)
    rng = alpha_range(lam, mu, L) if d else None
    amin, amax = rng if rng else (None, None)
    parity = "even" if (lam + mu + L) % 2 == 0 else "odd"
    return Sector(irrep, L, d, amin, amax, parity)


@dataclass(frozen=True)
class AlgebraCoefficients:
    a2: Fraction
    a5: Fraction
    a6: Fraction
    a8: Fraction
    a9: Fraction
    b1: Fraction
    b2: Fraction
    b3: Fraction
    b4: Fraction
    b5: Fraction
    b7: Fraction
    g2: Fraction
    g3: Fraction
    Lsq: Fraction


COEFFICIENT_NAMES = ("a2", "a5", "a6", "a8", "a9", "b1", "b2", "b3", "b4", "b5", "b7")


def algebra_coefficients(g2, g3, Lsq) -> AlgebraCoefficients:
    """Structure constants of the double-commutator algebra of x and y, and of
    its central element, at given values of g2, g3 and L^2."""
    g2, g3, l2 = Fraction(g2), Fraction(g3), Fraction(Lsq)
    a2 = (g2 + 2 * l2 - 18) / 8
    a5 = (4 * l2 - g2) * g3 / 256
    a6 = (8 * g2 * (3 - l2) * (2 * g2 - l2 - 21) + 9 * g3 ** 2
          - 16 * l2 * ((l2 - 18) * l2 + 63) + 1296) / 6144
    a8 = (16 * (l2 - 3) ** 2 * (g2 ** 2 + (l2 - 9) * (l2 - 3))
          - 16 * (2 * l2 - 3) * (l2 ** 2 - 6 * l2 - 18) * g2
          + 3 * g3 ** 2 * (18 - 10 * l2 + g2)
          + 2592 * (l2 - 1)) / 98304
    a9 = (4 * g2 * (l2 - 3) * (2 * g2 - 7 * l2 - 3) - 3 * g3 ** 2
          - 16 * l2 * ((l2 - 18) * l2 + 9)) * g3 / 196608
    return AlgebraCoefficients(
        a2=a2, a5=a5, a6=a6, a8=a8, a9=a9,
        b1=6 * a5 + 2 * a9,
        b2=-2 * a6 - 2 * a8,
        b3=6 * a2 + a6,
        b4=-a5,
        b5=8 * a2 - 24,
        b7=-2 * a2 + 12,
        g2=g2, g3=g3, Lsq=l2,
    )


def coefficients_in_Lsq(g2, g3) -> dict[str, list[Fraction]]:
    """Each coefficient as a polynomial in L^2 (ascending powers) at fixed g2, g3.

    Every coefficient has degree at most 4 in L^2, so exact interpolation
    through five nodes recovers it.
    """
    nodes = [Fraction(k) for k in range(5)]
    samples = [algebra_coefficients(g2, g3, t) for t in nodes]
    out = {}
    for name in COEFFICIENT_NAMES:
        out[name] = _interpolate(nodes, [getattr(s, name) for s in samples])
    return out


def _interpolate(xs, ys):
    """Ascending coefficients of the Lagrange interpolant through (xs, ys)."""
    n = len(xs)
    coeffs = [Fraction(0)] * n
    for i in range(n):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j in range(n):
            if j == i:
                continue
            # multiply by (t - xs[j])
            basis = [Fraction(0)] + basis
            for k in range(len(basis) - 1):
                basis[k] -= xs[j] * basis[k + 1]
            denom *= xs[i] - xs[j]
        for k in range(n):
            coeffs[k] += ys[i] * basis[k] / denom
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def coefficient_dict(c: AlgebraCoefficients) -> dict[str, Fraction]:
    return {f.name: getattr(c, f.name) for f in fields(c)}
