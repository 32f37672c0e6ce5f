"""Missing-label operators x and y in the Bargmann-Moshinsky basis.

Both operators are tridiagonal in the BM label alpha. The BM basis is not
orthogonal, so the matrices are not symmetric; their spectra are real and are
taken from the exact characteristic polynomial.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import mpmath

from . import poly
from .irrep import Sector, make_sector


class EmptySectorError(ValueError):
    pass


def beta(sector: Sector, row: int, col: int) -> Fraction:
    """Matrix element of x between BM labels: x|col> = sum_row |row> beta[row, col]."""
    lam, mu, L, a = sector.lam, sector.mu, sector.L, col
    even = sector.parity == "even"
    if row == a + 1:
        if even:
            return Fraction((2 * a - lam) * (2 * a - lam + 1) * (2 * a - mu + L - lam), 8)
        return Fraction((2 * a - lam + 1) * (2 * a - lam + 2) * (2 * a - mu + L - lam + 1), 8)
    if row == a - 1:
        return Fraction(a * (2 * a + L - lam) * (2 * a + L - lam - 1), 4)
    if row != a:
        return Fraction(0)
    # the only half-integer coefficient is lam + 2 mu + 3/2; doubling everything keeps it integral
    common = -9 * L * (L + 1) * (2 * lam + 4 * mu + 3) + 2 * (lam - mu) * (2 * lam + mu + 3) * (lam + 2 * mu + 3)
    if even:
        num = (54 * (2 * a - lam + L) * (8 * a * a - 2 * a * (3 * lam - L + mu) + lam * lam + mu * (lam + L) + L + 1)
               + common + 54 * L * mu)
    else:
        num = (54 * (2 * a - lam + L) * (8 * a * a - 2 * a * (3 * lam - L + mu - 3) + lam * lam + lam * (mu - 1)
                                         + L * mu + 2 * L + 5)
               + common + 54 * lam + 54 * L * (mu - 1) + 108)
    return Fraction(num, 432)


def gamma(sector: Sector, row: int, col: int) -> Fraction:
    """Matrix element of y between BM labels, same convention as :func:`beta`."""
    lam, mu, L, a = sector.lam, sector.mu, sector.L, col
    even = sector.parity == "even"
    if row == a + 1:
        k = 6 * a - lam + mu + 3 * L + (6 if even else 9)
        return Fraction(k, 6) * beta(sector, row, col)
    if row == a - 1:
        if even:
            return Fraction(3 * a - 2 * lam - mu - 3, 3) * beta(sector, row, col)
        return Fraction(6 * a - 4 * lam - 2 * mu - 6, 6) * beta(sector, row, col)
    if row != a:
        return Fraction(0)
    l, m = lam, mu
    if even:
        num = (384 * a ** 4 - 128 * a ** 3 * (5 * l - 3 * L + m)
               + 16 * a ** 2 * (23 * l * l + l * (8 * m - 30 * L - 6) + 6 * L * L - 3 * L * (2 * m + 1) - m * m - 6 * m + 3)
               - 8 * a * (10 * l ** 3 - 2 * l * l * (11 * L - 2 * m + 6)
                          + 2 * l * (5 * L * L + L * (2 - 4 * m) - m * m - 6 * m + 2)
                          + L * L * (2 * m + 3) + L * (2 * m - 3) + 2 * m)
               + 4 * l * l * (3 * L * L + L * (7 - 2 * m) - m * m - 6 * m + 2) - 8 * l ** 3 * (2 * L + 3) + 4 * l ** 4
               + 4 * l * (L * L * (m - 1) + L * (3 * m - 1) + 3 * (m + 1))
               - L ** 4 - 2 * L ** 3 + 5 * L * L + 6 * L + 4 * m * m + 12 * m - 9)
    else:
        num = (384 * a ** 4 - 128 * a ** 3 * (5 * l - 3 * L + m - 3)
               + 16 * a ** 2 * (23 * l * l + l * (-30 * L + 8 * m - 36) + 6 * L * L + L * (15 - 6 * m) - m * m - 12 * m + 12)
               - 8 * a * (l * l * (-22 * L + 4 * m - 34) + 10 * l ** 3
                          + 2 * l * (5 * L * L - 4 * L * (m - 4) - m * m - 10 * m + 13)
                          + L * L * (2 * m - 3) + L * (10 * m - 9) + 10 * m - 6)
               + 4 * l * l * (3 * L * L + L * (15 - 2 * m) - m * m - 8 * m + 14) - 8 * l ** 3 * (2 * L + 5) + 4 * l ** 4
               + 4 * l * (L * L * (m - 5) + L * (7 * m - 13) + 9 * m - 5)
               - 8 * L * L * m - L ** 4 - 2 * L ** 3 + 5 * L * L - 24 * L * m + 6 * L + 4 * m * m - 4 * m - 9)
    return Fraction(num, 192)


@dataclass(frozen=True)
class TridiagonalRational:
    """Tridiagonal matrix indexed by alpha = index_offset, index_offset + 1, ...

    ``sub[k]`` is entry (k+1, k) and ``sup[k]`` is entry (k, k+1).
    """
    diag: tuple
    sup: tuple
    sub: tuple
    index_offset: int = 0

    def __post_init__(self):
        if len(self.diag) < 1:
            raise ValueError("empty matrix")
        if len(self.sup) != len(self.diag) - 1 or len(self.sub) != len(self.diag) - 1:
            raise ValueError("off-diagonal lengths must be size - 1")

    @property
    def size(self) -> int:
        return len(self.diag)

    def entry(self, i: int, j: int) -> Fraction:
        if i == j:
            return self.diag[i]
        if j == i + 1:
            return self.sup[i]
        if i == j + 1:
            return self.sub[j]
        return Fraction(0)

    def dense(self) -> list[list[Fraction]]:
        n = self.size
        return [[self.entry(i, j) for j in range(n)] for i in range(n)]

    def trace(self) -> Fraction:
        return sum(self.diag, Fraction(0))


def _build(sector: Sector, element) -> TridiagonalRational:
    if sector.multiplicity < 1:
        raise EmptySectorError("empty sector")
    alphas = list(sector.alphas)
    diag = tuple(element(sector, a, a) for a in alphas)
    sup = tuple(element(sector, a, a + 1) for a in alphas[:-1])
    sub = tuple(element(sector, a + 1, a) for a in alphas[:-1])
    return TridiagonalRational(diag, sup, sub, alphas[0])


def x_matrix(sector: Sector) -> TridiagonalRational:
    return _build(sector, beta)


def y_matrix(sector: Sector) -> TridiagonalRational:
    return _build(sector, gamma)


def characteristic_polynomial(m: TridiagonalRational) -> list[Fraction]:
    """det(t - m) by the three-term recurrence on leading principal minors."""
    prev, cur = [Fraction(1)], [Fraction(1), -m.diag[0]]
    for k in range(1, m.size):
        shifted = poly.multiply([Fraction(1), -m.diag[k]], cur)
        coupling = m.sup[k - 1] * m.sub[k - 1]
        tail = [Fraction(0)] * (len(shifted) - len(prev)) + [coupling * c for c in prev]
        prev, cur = cur, [s - t for s, t in zip(shifted, tail)]
    return cur


@dataclass(frozen=True)
class SpectrumResult:
    char_poly: list
    roots: list
    exact: list
    root_error_bound: mpmath.mpf


def spectrum(m: TridiagonalRational, digits: int = 30) -> SpectrumResult:
    """Eigenvalues from the exact characteristic polynomial.

    Real roots are isolated by Sturm sequences; rational ones are reported
    exactly in ``exact`` (None for irrational roots).
    """
    p = characteristic_polynomial(m)
    return spectrum_of_polynomial(p, digits)


def spectrum_of_polynomial(p, digits: int = 30) -> SpectrumResult:
    roots, exact = [], []
    err = mpmath.mpf(0)
    for r in poly.real_roots(p, digits):
        roots += [r.value] * r.multiplicity
        exact += [r.exact] * r.multiplicity
        err = max(err, r.error)
    if len(roots) < poly.degree(p):
        # should not happen for x and y; kept so the contract "size roots" holds
        with mpmath.workdps(digits + 20):
            allr = mpmath.polyroots([mpmath.mpf(c.numerator) / c.denominator for c in p],
                                    maxsteps=500, extraprec=4 * digits)
        for z in allr:
            if isinstance(z, mpmath.mpc) and abs(z.imag) > mpmath.mpf(10) ** (-digits):
                roots.append(z)
                exact.append(None)
        order = sorted(range(len(roots)), key=lambda i: (mpmath.re(roots[i]), mpmath.im(roots[i])))
        roots = [roots[i] for i in order]
        exact = [exact[i] for i in order]
    return SpectrumResult(p, roots, exact, err)


def sector_spectra(lam: int, mu: int, L: int, digits: int = 30) -> Optional[tuple[SpectrumResult, SpectrumResult]]:
    """(x spectrum, y spectrum) for one sector, or None when the sector is empty."""
    s = make_sector(lam, mu, L)
    if not s.multiplicity:
        return None
    return spectrum(x_matrix(s), digits), spectrum(y_matrix(s), digits)
