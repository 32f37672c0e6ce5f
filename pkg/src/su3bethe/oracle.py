"""Brute-force oracle: explicit matrices of an su(3) irrep and its labeling operators.

The irrep (lam, mu) is realized on polynomials in two triples of variables
v = (v1, v2, v3), w = (w1, w2, w3) with

    E_ij = v_i d/dv_j + w_i d/dw_j - delta_ij (lam + 2 mu) / 3,

as the cyclic module generated by the highest weight vector
v1**lam * (v1 w2 - v2 w1)**mu under the lowering operators E21 and E32.
Each weight space gets a reduced echelon basis over the rationals, so every
basis vector is a weight vector and coordinates are read off at pivots.

The labeling operators are written in a rescaled basis: vectors whose E22
weight has odd parity are multiplied by sqrt(2). This removes the 1/sqrt(2)
factors in L1, L2, T13, T23 and leaves only Gaussian rationals. The rescaling
is a similarity transform, so commutators, characteristic polynomials and
vanishing residuals are unaffected.
"""
from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Optional

from sympy import QQ
from sympy.polys.domains import QQ_I
from sympy.polys.matrices import DomainMatrix

from . import poly
from .irrep import (COEFFICIENT_NAMES, IrrepLabel, casimirs, coefficients_in_Lsq, dimension,
                    so3_content)

DEFAULT_CAP = 512


class IrrepTooLargeError(ValueError):
    pass


def to_fraction(q) -> Fraction:
    return Fraction(int(q.numerator), int(q.denominator))


# -- polynomial realization -------------------------------------------------

def _apply_E(i, j, vec, shift):
    """E_ij (0-based) on a polynomial {exponents: coeff}."""
    out = {}
    for mono, c in vec.items():
        for off in (0, 3):
            e = mono[off + j]
            if e:
                new = list(mono)
                new[off + j] -= 1
                new[off + i] += 1
                key = tuple(new)
                out[key] = out.get(key, 0) + c * e
        if i == j:
            out[mono] = out.get(mono, 0) - shift * c
    return {k: v for k, v in out.items() if v}


class _WeightSpace:
    """Reduced echelon basis of one weight space."""

    def __init__(self):
        self.rows = []  # list of (pivot, poly)

    def add(self, vec):
        v = dict(vec)
        for piv, row in self.rows:
            c = v.get(piv)
            if c:
                for k, rc in row.items():
                    nv = v.get(k, 0) - c * rc
                    if nv:
                        v[k] = nv
                    else:
                        v.pop(k, None)
        if not v:
            return
        piv = max(v)
        inv = 1 / v[piv]
        v = {k: c * inv for k, c in v.items()}
        for idx, (p, row) in enumerate(self.rows):
            c = row.get(piv)
            if c:
                new = dict(row)
                for k, vc in v.items():
                    nv = new.get(k, 0) - c * vc
                    if nv:
                        new[k] = nv
                    else:
                        new.pop(k, None)
                self.rows[idx] = (p, new)
        self.rows.append((piv, v))

    def finish(self):
        self.rows.sort(key=lambda r: r[0], reverse=True)

    def coordinates(self, vec):
        return [vec.get(piv, 0) for piv, _ in self.rows]


@dataclass
class IrrepMatrices:
    irrep: IrrepLabel
    dim: int
    E: dict  # (i, j), 1-based -> DomainMatrix over QQ
    weights: list  # (n1, n2, n3) occupation numbers of each basis vector
    basis_tag: str = "polynomial highest-weight module, reduced echelon basis per weight space"

    def L3_eigenvalues(self):
        return [n1 - n3 for n1, _, n3 in self.weights]


def build_irrep(irrep: IrrepLabel, cap: int = DEFAULT_CAP) -> IrrepMatrices:
    if dimension(irrep) > cap:
        raise IrrepTooLargeError(f"irrep too large: dim{irrep} = {dimension(irrep)} > cap {cap}")
    return _build_irrep(irrep.lam, irrep.mu)


@functools.lru_cache(maxsize=64)
def _build_irrep(lam: int, mu: int) -> IrrepMatrices:
    irrep = IrrepLabel(lam, mu)
    shift = QQ(lam + 2 * mu, 3)
    hw = {}
    for k in range(mu + 1):
        mono = (lam + mu - k, k, 0, k, mu - k, 0)
        hw[mono] = QQ((-1) ** k * comb(mu, k))
    top = (lam + mu, mu, 0)
    spaces = {top: _WeightSpace()}
    spaces[top].add(hw)
    spaces[top].finish()
    order = [top]
    level = [top]
    # lowering by E21: (n1, n2, n3) -> (n1-1, n2+1, n3); by E32: -> (n1, n2-1, n3+1)
    while level:
        candidates = set()
        for n1, n2, n3 in level:
            if n1 > 0:
                candidates.add((n1 - 1, n2 + 1, n3))
            if n2 > 0:
                candidates.add((n1, n2 - 1, n3 + 1))
        nxt = []
        for wt in sorted(candidates, reverse=True):
            ws = _WeightSpace()
            n1, n2, n3 = wt
            parent = (n1 + 1, n2 - 1, n3)
            if parent in spaces:
                for _, b in spaces[parent].rows:
                    ws.add(_apply_E(1, 0, b, shift))
            parent = (n1, n2 + 1, n3 - 1)
            if parent in spaces:
                for _, b in spaces[parent].rows:
                    ws.add(_apply_E(2, 1, b, shift))
            if ws.rows:
                ws.finish()
                spaces[wt] = ws
                nxt.append(wt)
        order += nxt
        level = nxt
    index = {}
    weights = []
    for wt in order:
        for k in range(len(spaces[wt].rows)):
            index[wt, k] = len(weights)
            weights.append(wt)
    n = len(weights)
    if n != dimension(irrep):
        raise RuntimeError(f"constructed dimension {n} != {dimension(irrep)}")
    E = {}
    for i, j in itertools.product(range(3), repeat=2):
        dod = {}
        for wt in order:
            tgt = list(wt)
            tgt[i] += 1
            tgt[j] -= 1
            tgt = tuple(tgt)
            if tgt not in spaces:
                continue
            for k, (_, b) in enumerate(spaces[wt].rows):
                col = index[wt, k]
                image = _apply_E(i, j, b, shift)
                for r, c in enumerate(spaces[tgt].coordinates(image)):
                    if c:
                        dod.setdefault(index[tgt, r], {})[col] = c
        E[i + 1, j + 1] = DomainMatrix(dod, (n, n), QQ)
    return IrrepMatrices(irrep, n, E, weights)


# -- labeling operators -----------------------------------------------------

I_UNIT = QQ_I(0, 1)


@dataclass
class LabelingOperators:
    irrep: IrrepLabel
    L: dict  # k -> matrix over QQ_I
    T: dict  # (m, n) -> matrix over QQ_I, symmetric
    Lsq: DomainMatrix  # over QQ
    xbar: DomainMatrix
    ybar: DomainMatrix
    x: DomainMatrix
    y: DomainMatrix
    g2op: DomainMatrix
    g3op: DomainMatrix
    weights: list = field(repr=False, default_factory=list)

    @property
    def dim(self):
        return self.Lsq.shape[0]


def _real(M: DomainMatrix) -> DomainMatrix:
    """Drop to QQ, insisting that every imaginary part is zero."""
    dod = {}
    for i, row in M.to_dod().items():
        for j, v in row.items():
            if v.y:
                raise ArithmeticError("operator expected to be real has an imaginary entry")
            if v.x:
                dod.setdefault(i, {})[j] = v.x
    return DomainMatrix(dod, M.shape, QQ)


def _sum(mats):
    mats = list(mats)
    acc = mats[0]
    for m in mats[1:]:
        acc = acc + m
    return acc


def build_labeling_operators(rep: IrrepMatrices) -> LabelingOperators:
    return _labeling(rep.irrep.lam, rep.irrep.mu)


@functools.lru_cache(maxsize=64)
def _labeling(lam: int, mu: int) -> LabelingOperators:
    rep = _build_irrep(lam, mu)
    n = rep.dim
    E = {k: v.convert_to(QQ_I) for k, v in rep.E.items()}
    half = QQ_I(QQ(1, 2), 0)
    P = DomainMatrix({r: {r: (half if wt[1] % 2 else QQ_I(1, 0))} for r, wt in enumerate(rep.weights)}, (n, n), QQ_I)
    i = I_UNIT
    L = {
        1: P * (E[1, 2] - E[3, 2] + E[2, 1] - E[2, 3]),
        2: P * (E[1, 2] + E[3, 2] - E[2, 1] - E[2, 3]) * (-i),
        3: E[1, 1] - E[3, 3],
    }
    T = {
        (1, 1): E[1, 1] + E[3, 3] + E[1, 3] + E[3, 1],
        (2, 2): E[1, 1] + E[3, 3] - E[1, 3] - E[3, 1],
        (1, 2): (E[3, 1] - E[1, 3]) * i,
        (1, 3): -(P * (E[1, 2] + E[3, 2] + E[2, 1] + E[2, 3])),
        (2, 3): P * (E[1, 2] - E[3, 2] - E[2, 1] + E[2, 3]) * i,
    }
    T[3, 3] = -(T[1, 1] + T[2, 2])
    for a, b in [(1, 2), (1, 3), (2, 3)]:
        T[b, a] = T[a, b]
    idx = (1, 2, 3)
    Lsq_c = _sum(L[k] * L[k] for k in idx)
    TT = {(m, p): _sum(T[m, k] * T[k, p] for k in idx) for m in idx for p in idx}
    LT = {(m, k): L[m] * T[m, k] for m in idx for k in idx}
    xbar_c = _sum(LT[m, k] * L[k] for m in idx for k in idx)
    ybar_c = _sum(L[m] * TT[m, p] * L[p] for m in idx for p in idx)
    g2_c = Lsq_c + _sum(TT[m, m] for m in idx) * half
    g3_c = _sum(TT[m, p] * T[p, m] for m in idx for p in idx) * QQ_I(QQ(1, 3), 0) - xbar_c
    Lsq, xbar, ybar = _real(Lsq_c), _real(xbar_c), _real(ybar_c)
    g2op, g3op = _real(g2_c), _real(g3_c)
    g2, g3 = casimirs(rep.irrep)
    eye = DomainMatrix.eye(n, QQ)
    x = (xbar + eye * QQ(g3.numerator, 4 * g3.denominator)) * QQ(1, 16)
    c = QQ(g2.numerator, g2.denominator)
    y = (ybar + eye * (3 - c) - (Lsq * (9 + c) - Lsq * Lsq) * QQ(1, 3)) * QQ(-1, 64)
    return LabelingOperators(rep.irrep, L, T, Lsq, xbar, ybar, x, y, g2op, g3op, list(rep.weights))


def labeling_operators(irrep: IrrepLabel, cap: int = DEFAULT_CAP) -> LabelingOperators:
    build_irrep(irrep, cap)
    return _labeling(irrep.lam, irrep.mu)


# -- algebra verification ---------------------------------------------------

def commutator(a, b):
    return a * b - b * a


def anticommutator(a, b):
    return a * b + b * a


def _poly_at(coeffs, M, eye):
    """sum_k coeffs[k] M**k by Horner, coefficients ascending."""
    acc = eye * QQ(0)
    for c in reversed(coeffs):
        acc = acc * M + eye * QQ(c.numerator, c.denominator)
    return acc


@dataclass
class AlgebraReport:
    """Exact residual matrices of the relations, with L^2 as an operator.

    ``omega`` is the global constant when Omega is a multiple of the identity,
    else None; ``omega_by_L`` holds its value on each L^2 eigenspace (None where
    it is not scalar there).
    """
    irrep: IrrepLabel
    residuals: dict  # name -> DomainMatrix
    omega: Optional[Fraction]
    omega_by_L: dict = field(default_factory=dict)

    def zero(self, name: str) -> bool:
        return self.residuals[name].is_zero_matrix

    @property
    def relations_hold(self) -> bool:
        return all(self.zero(k) for k in RELATION_NAMES)

    @property
    def omega_commutes(self) -> bool:
        return self.zero("[Omega,x]") and self.zero("[Omega,y]")

    @property
    def omega_scalar(self) -> bool:
        return self.zero("Omega-c*I")

    @property
    def omega_blockwise_scalar(self) -> bool:
        return all(v is not None for v in self.omega_by_L.values())

    @property
    def passed(self) -> bool:
        return all(r.is_zero_matrix for r in self.residuals.values())

    def nonzero_counts(self) -> dict:
        return {k: v.nnz() for k, v in self.residuals.items()}


RELATION_NAMES = ("[x,[x,y]]", "[y,[y,x]]")


def _omega(x, y, coeff):
    b1, b2, b3, b4, b5, b7 = (coeff[k] for k in ("b1", "b2", "b3", "b4", "b5", "b7"))
    xx, yy, xy, yx = x * x, y * y, x * y, y * x
    cxy = xy - yx
    return (b1 * x + b2 * y + b3 * xx + b4 * (xy + yx) + b5 * yy + b7 * (xy * x)
            - xx * xx + yy * y * QQ(4) + cxy * cxy)


def _relations(x, y, coeff, eye):
    """Residual matrices of the double-commutator relations and the central element."""
    a2, a5, a6, a8, a9 = (coeff[k] for k in ("a2", "a5", "a6", "a8", "a9"))
    xx, yy, xy, yx = x * x, y * y, x * y, y * x
    cxy = xy - yx
    out = {
        "[x,[x,y]]": commutator(x, cxy) - (yy * QQ(-6) + a2 * xx + a5 * x + a8),
        "[y,[y,x]]": commutator(y, -cxy) - (xx * x * QQ(2) + a2 * (xy + yx) + a5 * y - a6 * x - a9),
    }
    omega = _omega(x, y, coeff)
    out["[Omega,x]"] = commutator(omega, x)
    out["[Omega,y]"] = commutator(omega, y)
    c = omega.to_dod().get(0, {}).get(0, QQ(0))
    out["Omega-c*I"] = omega - eye * c
    return out, omega, to_fraction(c)


def verify_algebra(irrep: IrrepLabel, cap: int = DEFAULT_CAP) -> AlgebraReport:
    """Exact check of the double-commutator relations of x, y and of the
    centrality of Omega, with L^2 entering the coefficients as an operator."""
    ops = labeling_operators(irrep, cap)
    n = ops.dim
    eye = DomainMatrix.eye(n, QQ)
    g2, g3 = casimirs(irrep)
    polys = coefficients_in_Lsq(g2, g3)
    coeff = {name: _poly_at(polys[name], ops.Lsq, eye) for name in COEFFICIENT_NAMES}
    residuals, omega, c = _relations(ops.x, ops.y, coeff, eye)
    by_L = {}
    for L in so3_content(irrep):
        K, piv = _eigenspace(ops.Lsq, L * (L + 1))
        block = _restrict(omega, K, piv)
        val = block.to_dod().get(0, {}).get(0, QQ(0))
        scalar = (block - DomainMatrix.eye(block.shape[0], QQ) * val).is_zero_matrix
        by_L[L] = to_fraction(val) if scalar else None
    return AlgebraReport(irrep, residuals, c if residuals["Omega-c*I"].is_zero_matrix else None, by_L)


# -- restriction to eigenspaces ---------------------------------------------

def _eigenspace(M: DomainMatrix, value, indices=None):
    """Reduced basis (rows) of ker(M - value) and its pivot columns."""
    if indices is not None:
        M = M.extract(indices, indices)
    n = M.shape[0]
    A = M - DomainMatrix.eye(n, QQ) * QQ(value)
    N = A.nullspace()
    if N.shape[0] == 0:
        return N, ()
    R, piv = N.rref()
    return R, piv


def _restrict(op: DomainMatrix, K: DomainMatrix, piv, indices=None) -> DomainMatrix:
    """Matrix of op on the invariant subspace spanned by the rows of K."""
    if indices is not None:
        op = op.extract(indices, indices)
    image = op * K.transpose()
    return image.extract(list(piv), list(range(K.shape[0])))


def block_charpoly(ops: LabelingOperators, which: str, L: int, m: Optional[int] = None) -> list[Fraction]:
    """Characteristic polynomial of x or y on {L^2 = L(L+1), L3 = m} (m defaults to L)."""
    if m is None:
        m = L
    op = {"x": ops.x, "y": ops.y}[which]
    idx = [r for r, (n1, _, n3) in enumerate(ops.weights) if n1 - n3 == m]
    if not idx:
        return [Fraction(1)]
    K, piv = _eigenspace(ops.Lsq, L * (L + 1), idx)
    if K.shape[0] == 0:
        return [Fraction(1)]
    B = _restrict(op, K, piv, idx)
    return [to_fraction(c) for c in B.charpoly()]


@dataclass(frozen=True)
class BlockSpectrum:
    L: int
    char_poly: list
    roots: list
    exact: list


def block_spectrum(irrep: IrrepLabel, which: str = "y", cap: int = DEFAULT_CAP, digits: int = 30) -> dict:
    """L -> eigenvalues of x or y on the highest-L3 slice of each spin-L block."""
    ops = labeling_operators(irrep, cap)
    out = {}
    for L in so3_content(irrep):
        p = block_charpoly(ops, which, L)
        rr = poly.real_roots(p, digits)
        roots, exact = [], []
        for r in rr:
            roots += [r.value] * r.multiplicity
            exact += [r.exact] * r.multiplicity
        out[L] = BlockSpectrum(L, p, roots, exact)
    return out
