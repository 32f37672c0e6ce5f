"""Analytical Bethe ansatz for the degree-4 labeling operator y.

Eigenvalues of the Bethe subalgebra are dressed versions of their highest
weight values. Analyticity of the dressed eigenvalue fixes the Bethe roots;
the y eigenvalue is read off the dressed eigenvalue of A2(u).

Numerics use mpmath at a configurable working precision (default 50 digits).
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

import mpmath
import numpy as np

from .irrep import IrrepLabel, WeightData, casimirs, highest_weight, so3_multiplicity

log = logging.getLogger(__name__)

DEFAULT_PRECISION = 50
SEPARATION_TOL = 1e-8
DEDUP_DIGITS = 10
PROBES = (Fraction(3), Fraction(4), Fraction(5), Fraction(7, 2), Fraction(9, 2), Fraction(11, 3),
          Fraction(13, 4), Fraction(17, 5), Fraction(23, 6), Fraction(29, 7), Fraction(31, 8), Fraction(37, 9))


class DressingPoleError(ZeroDivisionError):
    pass


class SingularConfigurationError(ZeroDivisionError):
    pass


class InconsistentExtractionError(ValueError):
    pass


class BetheSolveError(RuntimeError):
    def __init__(self, msg, partial):
        super().__init__(msg)
        self.partial = partial


def mpq(q) -> mpmath.mpf:
    q = Fraction(q)
    return mpmath.mpf(q.numerator) / q.denominator


def _pole_eps():
    return mpmath.mpf(10) ** (-(mpmath.mp.dps - 5))


def _weights(w: WeightData):
    return mpq(w.alpha11), mpq(w.alpha22), mpq(w.alpha33)


def elementary_symmetric(roots) -> list:
    """e_1 ... e_M of the roots."""
    coeffs = [mpmath.mpc(1)]
    for r in roots:
        coeffs = [a - r * b for a, b in zip(coeffs + [0], [0] + coeffs)]
    return [(-1) ** k * c for k, c in enumerate(coeffs)][1:]


def roots_from_elementary(e: Sequence) -> list:
    """Roots of t^M - e1 t^(M-1) + e2 t^(M-2) - ...; inverse of :func:`elementary_symmetric`."""
    if not e:
        return []
    coeffs = [1] + [(-1) ** (k + 1) * (mpq(c) if isinstance(c, (int, Fraction)) else c) for k, c in enumerate(e)]
    return list(mpmath.polyroots(coeffs, maxsteps=400, extraprec=4 * mpmath.mp.dps))


@dataclass
class BetheRootSet:
    M: int
    roots: tuple
    elementary_symmetric: tuple
    max_residual: mpmath.mpf
    y: Optional[mpmath.mpf] = None
    y_exact: Optional[Fraction] = None
    e_exact: tuple = field(default_factory=tuple)
    paired: bool = False

    @classmethod
    def from_roots(cls, roots, w: Optional[WeightData] = None):
        """Residual is the max over roots whose equation is regular; a pinned
        singular pair (see :func:`singular_pair`) has no finite equation of its own."""
        roots = tuple(mpmath.mpc(r) for r in roots)
        e = tuple(elementary_symmetric(roots))
        res = mpmath.mpf(0)
        paired = False
        if w is not None:
            skip = _pair_indices(roots, w)
            paired = bool(skip)
            for p in range(len(roots)):
                if p not in skip:
                    res = max(res, abs(bethe_residual(roots, p, w)))
        return cls(len(roots), roots, e, res, paired=paired)

    def e_key(self):
        return tuple((round(float(mpmath.re(c)), DEDUP_DIGITS), round(float(mpmath.im(c)), DEDUP_DIGITS))
                     for c in self.elementary_symmetric)


# -- eigenvalue building blocks ---------------------------------------------

def sigma(i: int, u, w: WeightData):
    a1, a2, a3 = _weights(w)
    if i == 1:
        return (u + a1) * (u - a3)
    if i == 2:
        return (u + a2) * (u - a2)
    if i == 3:
        return (u + a3) * (u - a1)
    raise ValueError("sigma index must be 1, 2 or 3")


def _roots_of(roots):
    if isinstance(roots, BetheRootSet):
        return roots.roots
    return tuple(roots)


def dressing(i: int, u, roots):
    roots = _roots_of(roots)
    eps = _pole_eps()
    half = mpmath.mpf(1) / 2
    acc = mpmath.mpc(1)
    for r in roots:
        if i == 1:
            num, den = u - r - half, u - r + half
        elif i == 3:
            num, den = -u - r - half, -u - r + half
        elif i == 2:
            num = (u - r + 3 * half) * (u + r - 3 * half)
            den = (u - r + half) * (u + r - half)
        else:
            raise ValueError("dressing index must be 1, 2 or 3")
        if abs(den) <= eps:
            raise DressingPoleError("evaluation at dressing pole")
        acc *= num / den
    return acc


def _check_u(*vals):
    for v in vals:
        if abs(v) <= _pole_eps():
            raise DressingPoleError("evaluation at dressing pole")


def lambda1(u, w: WeightData, roots=()):
    u = mpmath.mpmathify(u)
    _check_u(u)
    return ((2 * u - 1) / (2 * u ** 3) * dressing(1, u, roots) * sigma(1, u, w)
            + dressing(2, u, roots) * sigma(2, u, w) / u ** 2
            + (2 * u + 1) / (2 * u ** 3) * dressing(3, u, roots) * sigma(3, u, w))


def lambda2(u, w: WeightData, roots=()):
    u = mpmath.mpmathify(u)
    v = u - 1
    _check_u(u, v)
    d1u, d2u = dressing(1, u, roots), dressing(2, u, roots)
    d2v, d3v = dressing(2, v, roots), dressing(3, v, roots)
    s1u, s2u = sigma(1, u, w), sigma(2, u, w)
    s2v, s3v = sigma(2, v, w), sigma(3, v, w)
    return (2 * (1 - 2 * u) / (u ** 2 * v ** 2) * d1u * s1u * d3v * s3v
            - 4 / (u ** 2 * v) * d1u * s1u * d2v * s2v
            - 4 / (u * v ** 2) * d2u * s2u * d3v * s3v)


def lambda1_residue(roots, p: int, w: WeightData, eps=None):
    """Residue of Lambda1 at its dressing pole u = u_p - 1/2, estimated as
    eps * Lambda1(u_p - 1/2 + eps); the error is O(eps)."""
    roots = _roots_of(roots)
    if eps is None:
        eps = mpmath.mpf(10) ** (-(mpmath.mp.dps * 2 // 5))
    return eps * lambda1(roots[p] - mpmath.mpf(1) / 2 + eps, w, roots)


def a1_closed(u, g2, Lsq):
    u = mpmath.mpmathify(u)
    _check_u(u)
    return 3 - (mpq(g2) - 2 * mpq(Lsq)) / (2 * u ** 2)


def a2_closed(u, g2, Lsq, y):
    """Scalar value of A2(u) on a joint eigenvector with y-eigenvalue ``y``."""
    u = mpmath.mpmathify(u)
    _check_u(u, u - 1)
    g2, l2 = mpq(g2), mpq(Lsq)
    d = (u - 1) ** 2 * u ** 2
    return (1 - 2 * u) * (32 * y / d + 6 + (l2 - g2) * (12 * u ** 2 + l2 - 12 * u) / (6 * d)
                          + (g2 ** 2 - 8 * l2 - 4 * g2 + 12) / (8 * d))


def a3_closed(u, g2, g3):
    u = mpmath.mpmathify(u)
    _check_u(u, u - 1, u - 2)
    g2, g3 = mpq(g2), mpq(g3)
    return (36 - 18 * g2 / (u * (u - 2)) + 9 * g2 ** 2 / (4 * u ** 2 * (u - 2) ** 2)
            - 9 * g3 ** 2 / (16 * u ** 2 * (u - 1) ** 2 * (u - 2) ** 2))


# -- Bethe equations --------------------------------------------------------

def bethe_residual(roots, p: int, w: WeightData):
    """LHS - RHS of the Bethe equation attached to root number p (0-based)."""
    roots = _roots_of(roots)
    a1, a2, a3 = _weights(w)
    eps = _pole_eps()
    half = mpmath.mpf(1) / 2
    up = roots[p]
    den = (up - half) ** 2 - a2 ** 2
    if abs(den) <= eps:
        raise SingularConfigurationError("singular configuration")
    lhs = (up - half - a3) * (up - half + a1) / den
    rhs = mpmath.mpc(1)
    for j, uj in enumerate(roots):
        if j == p:
            continue
        den = (up + uj - 1) * (up - uj - 1)
        if abs(den) <= eps:
            raise SingularConfigurationError("singular configuration")
        rhs *= (up - uj + 1) * (up + uj - 2) / den
    return lhs - rhs


def _residual_vector(roots, w):
    return [bethe_residual(roots, p, w) for p in range(len(roots))]


def _singularity_distance(roots, w: WeightData) -> float:
    """Distance from the nearest configuration where the Bethe equations are singular
    or two roots coincide."""
    a22 = float(w.alpha22)
    d = float("inf")
    for r in roots:
        d = min(d, abs(complex(r) - 0.5 - a22), abs(complex(r) - 0.5 + a22))
    for a, b in itertools.combinations([complex(r) for r in roots], 2):
        d = min(d, abs(a - b), abs(a + b - 1), abs(a - b - 1), abs(a - b + 1))
    return d


def singular_pair(w: WeightData) -> Optional[tuple[Fraction, Fraction]]:
    """The two points 1/2 +- alpha22 where the left side of the Bethe equations blows up.

    Placing a root at each of them makes both of their cleared equations vanish
    identically (the pair sums to 1), so such a set can be a legitimate limit
    of regular solutions. None when alpha22 = 0, since the points coincide.
    """
    if w.alpha22 == 0:
        return None
    half = Fraction(1, 2)
    return half + w.alpha22, half - w.alpha22


def _pair_indices(roots, w: WeightData, tol=None) -> tuple:
    pair = singular_pair(w)
    if pair is None:
        return ()
    if tol is None:
        tol = mpmath.mpf(10) ** (-(mpmath.mp.dps // 2))
    out = []
    for target in pair:
        t = mpq(target)
        hits = [i for i, r in enumerate(roots) if abs(r - t) < tol]
        if len(hits) != 1:
            return ()
        out.append(hits[0])
    return tuple(out)


def _has_exact_string(roots, tol) -> bool:
    """Two roots a unit apart: the scattering factor degenerates and the
    configuration is excluded, as for exact strings in rational spin chains."""
    for a, b in itertools.combinations(roots, 2):
        if abs(abs(complex(a - b)) - 1) < tol and abs(complex(a - b).imag) < tol:
            return True
    return False


def lambda1_defect(roots, irrep: IrrepLabel, L: int, probes=None):
    """Largest relative gap between the dressed Lambda1 and its closed form at probes.

    Vanishes (to working precision) exactly when the dressed eigenvalue is pole-free.
    """
    w = highest_weight(irrep)
    g2, _ = casimirs(irrep)
    roots = _roots_of(roots)
    if probes is None:
        probes = _probe_points(roots)
    worst = mpmath.mpf(0)
    for p in probes:
        ref = a1_closed(mpq(p), g2, L * (L + 1))
        worst = max(worst, abs(lambda1(mpq(p), w, roots) - ref) / max(1, abs(ref)))
    return worst


# vectorized float stage: many random starts at once

def _poly_form(U, a1, a2, a3):
    S, M = U.shape
    out = np.empty_like(U)
    for p in range(M):
        up = U[:, p]
        lhs = (up - 0.5 - a3) * (up - 0.5 + a1)
        den = (up - 0.5) ** 2 - a2 ** 2
        P = np.ones(S, complex)
        Q = np.ones(S, complex)
        for j in range(M):
            if j != p:
                uj = U[:, j]
                P *= (up + uj - 1) * (up - uj - 1)
                Q *= (up - uj + 1) * (up + uj - 2)
        out[:, p] = lhs * P - den * Q
    return out


def _rational_form(U, a1, a2, a3, fixed=()):
    """Residuals for the free roots in U; ``fixed`` roots only enter the products."""
    S, M = U.shape
    out = np.empty_like(U)
    others = [U[:, j] for j in range(M)] + [np.full(S, f, complex) for f in fixed]
    for p in range(M):
        up = U[:, p]
        val = (up - 0.5 - a3) * (up - 0.5 + a1) / ((up - 0.5) ** 2 - a2 ** 2)
        Q = np.ones(S, complex)
        for j, uj in enumerate(others):
            if j != p:
                Q *= (up - uj + 1) * (up + uj - 2) / ((up + uj - 1) * (up - uj - 1))
        out[:, p] = val - Q
    return out


def _newton_batch(U, func, args, iters=100):
    S, M = U.shape
    h = 1e-7
    eye = np.eye(M)
    with np.errstate(all="ignore"):
        for _ in range(iters):
            F = func(U, *args)
            J = np.empty((S, M, M), complex)
            for k in range(M):
                J[:, :, k] = (func(U + h * eye[k], *args) - F) / h
            J += 1e-14 * eye
            try:
                step = np.linalg.solve(J, F[..., None])[..., 0]
            except np.linalg.LinAlgError:
                step = np.zeros_like(U)
                for s in range(S):
                    try:
                        step[s] = np.linalg.solve(J[s], F[s])
                    except np.linalg.LinAlgError:
                        step[s] = 0
            norm = np.linalg.norm(step, axis=1)
            damp = np.minimum(1.0, 2.0 / np.maximum(norm, 1e-300))[:, None]
            U = U - damp * step
            bad = ~np.isfinite(U).all(axis=1)
            U[bad] = 50.0
        F = func(U, *args)
    return U, np.abs(F).max(axis=1)


def _polish(roots, w: WeightData, iters=60, fixed=()):
    """Newton on the rational Bethe equations at working precision.

    Only ``roots`` move; ``fixed`` roots are appended and their own equations skipped.
    """
    M = len(roots)
    if M == 0:
        return list(fixed)
    u = mpmath.matrix([mpmath.mpc(r) for r in roots])
    fixed = [mpmath.mpc(f) for f in fixed]
    h = mpmath.mpf(10) ** (-(mpmath.mp.dps // 2 + 5))
    target = mpmath.mpf(10) ** (-(mpmath.mp.dps - 8))

    def F_of(vec):
        full = list(vec) + fixed
        return mpmath.matrix([bethe_residual(full, p, w) for p in range(M)])

    for _ in range(iters):
        F = F_of(u)
        if mpmath.mnorm(F, 1) < target:
            break
        J = mpmath.matrix(M, M)
        for k in range(M):
            up, dn = u.copy(), u.copy()
            up[k] += h
            dn[k] -= h
            col = (F_of(up) - F_of(dn)) / (2 * h)
            for r in range(M):
                J[r, k] = col[r]
        u = u - mpmath.lu_solve(J, F)
    return list(u) + fixed


def closed_form_single_root(w: WeightData) -> Fraction:
    """The unique root when M = 1: the equation is linear in u - 1/2."""
    a11, a22, a33 = w.alpha11, w.alpha22, w.alpha33
    v = (a33 * a11 - a22 * a22) / (a11 - a33)
    return v + Fraction(1, 2)


def recognize_rational(x, max_den: int = 10 ** 6, digits: Optional[int] = None) -> Optional[Fraction]:
    """Continued-fraction recovery of a rational with denominator <= max_den,
    accepted only if it reproduces x to ``digits`` digits."""
    if digits is None:
        digits = mpmath.mp.dps - 10
    if isinstance(x, mpmath.mpc):
        if abs(x.imag) > mpmath.mpf(10) ** (-digits):
            return None
        x = x.real
    x = mpmath.mpf(x)
    q = _mpf_to_fraction(x).limit_denominator(max_den)
    if abs(x - mpq(q)) <= mpmath.mpf(10) ** (-digits) * max(1, abs(x)):
        return q
    return None


def _mpf_to_fraction(x: mpmath.mpf) -> Fraction:
    sign, man, exp, _ = mpmath.mpf(x)._mpf_
    q = Fraction(int(man)) * (Fraction(2) ** int(exp))
    return -q if sign else q


def _probe_points(roots, n=10):
    """Rational probe points kept away from every pole of the dressed eigenvalues."""
    poles = [0, 1]
    for r in roots:
        for base in (r - 0.5, 0.5 - r, r + 0.5, 1.5 - r):
            poles.append(complex(base))
            poles.append(complex(base) + 1)
    out = []
    for p in PROBES:
        if all(abs(float(p) - c) > SEPARATION_TOL * 1e4 for c in poles):
            out.append(p)
        if len(out) == n:
            break
    return out


def extract_y_values(roots, irrep: IrrepLabel, L: int, probes=None) -> list:
    w = highest_weight(irrep)
    g2, _ = casimirs(irrep)
    roots = _roots_of(roots)
    g2m, l2 = mpq(g2), mpmath.mpf(L * (L + 1))
    if probes is None:
        probes = _probe_points(roots)
    vals = []
    for p in probes:
        u = mpq(p)
        d = (u - 1) ** 2 * u ** 2
        lam = lambda2(u, w, roots)
        y = (lam / (1 - 2 * u) - 6 - (l2 - g2m) * (12 * u ** 2 + l2 - 12 * u) / (6 * d)
             - (g2m ** 2 - 8 * l2 - 4 * g2m + 12) / (8 * d)) * d / 32
        vals.append(y)
    return vals


def extract_y(roots, irrep: IrrepLabel, L: int, rel_tol=None) -> mpmath.mpf:
    """y eigenvalue encoded by a set of Bethe roots, checked across probe points."""
    vals = extract_y_values(roots, irrep, L)
    if rel_tol is None:
        rel_tol = mpmath.mpf(10) ** (-(mpmath.mp.dps // 2))
    ref = vals[0]
    scale = max(1, abs(ref))
    for v in vals[1:]:
        if abs(v - ref) > rel_tol * scale:
            raise InconsistentExtractionError("inconsistent extraction")
    y = sum(vals) / len(vals)
    if abs(mpmath.im(y)) > rel_tol * scale:
        raise InconsistentExtractionError("inconsistent extraction: eigenvalue is not real")
    return mpmath.re(y)


# -- solver -----------------------------------------------------------------

@dataclass
class SolverConfig:
    precision: int = DEFAULT_PRECISION
    seed: int = 0
    batch: int = 600
    max_batches: int = 12
    residual_tol: float = 1e-25


def _finalize(roots, irrep, L, w, cfg, fixed=()) -> Optional[BetheRootSet]:
    """Polish, filter and annotate one candidate; None when unphysical.

    Physical means: roots pairwise distinct, no two a unit apart, every regular
    equation satisfied, a pole-free dressed Lambda1 and a probe-independent y.
    Only the singular pair may sit on a singular point of the equations.
    """
    try:
        roots = _polish(roots, w, fixed=fixed)
        free = roots[:len(roots) - len(fixed)]
        if _singularity_distance(free, w) < SEPARATION_TOL:
            return None
        if fixed:
            for a in free:
                for f in fixed:
                    b = complex(f)
                    if min(abs(complex(a) - b), abs(complex(a) + b - 1)) < SEPARATION_TOL:
                        return None
        if _has_exact_string(roots, SEPARATION_TOL):
            return None
        rs = BetheRootSet.from_roots(roots, w)
        if bool(fixed) != rs.paired:
            return None
        if not mpmath.isfinite(rs.max_residual) or rs.max_residual > cfg.residual_tol:
            return None
        if lambda1_defect(rs.roots, irrep, L) > mpmath.mpf(10) ** (-(mpmath.mp.dps // 2)):
            return None
        y = extract_y(rs.roots, irrep, L)
    except (ZeroDivisionError, InconsistentExtractionError, ValueError):
        return None
    rs.y = y
    rs.y_exact = recognize_rational(y)
    rs.e_exact = tuple(recognize_rational(c) for c in rs.elementary_symmetric)
    return rs


def _multistart(n_free, fixed, irrep, L, w, cfg, rng, found, want, batches=None):
    """Random complex starts, float Newton, then high-precision polish."""
    a = tuple(float(v) for v in (w.alpha11, w.alpha22, w.alpha33))
    fixed_c = tuple(complex(float(f)) for f in fixed)
    scale = max(1.5, (irrep.lam + irrep.mu) / 2)
    forms = (_poly_form, _rational_form) if not fixed else (_rational_form,)
    for _ in range(batches or cfg.max_batches):
        U0 = rng.normal(scale=scale, size=(cfg.batch, n_free)) + 1j * rng.normal(scale=scale / 1.5, size=(cfg.batch, n_free))
        for form in forms:
            args = a + (fixed_c,) if form is _rational_form else a
            U, res = _newton_batch(U0.copy(), form, args)
            seen = set()
            for s in np.argsort(res):
                if not res[s] < 1e-7:
                    break
                r = U[s]
                if _singularity_distance(list(r) + list(fixed_c), w) < 1e-5 and not fixed:
                    continue
                key = tuple(np.round(np.sort_complex(r), 5))
                if key in seen:
                    continue
                seen.add(key)
                rs = _finalize(list(r), irrep, L, w, cfg, fixed=tuple(mpq(f) for f in fixed))
                if rs is not None:
                    found.setdefault(rs.e_key(), rs)
        if len(found) >= want:
            return


def solve_bethe(irrep: IrrepLabel, L: int, config: Optional[SolverConfig] = None) -> list[BetheRootSet]:
    """Physical Bethe root sets for the sector (irrep, L), one per y eigenvalue.

    Raises BetheSolveError if fewer distinct physical solutions than the
    SO(3) multiplicity are found.
    """
    cfg = config or SolverConfig()
    d = so3_multiplicity(irrep, L)
    if d < 1:
        raise ValueError(f"empty sector {irrep} L={L}")
    M = irrep.lam + irrep.mu - L
    w = highest_weight(irrep)
    with mpmath.workdps(cfg.precision):
        if M == 0:
            rs = BetheRootSet.from_roots([], w)
            rs.y = extract_y((), irrep, L)
            rs.y_exact = recognize_rational(rs.y)
            return [rs]
        if M == 1:
            u = closed_form_single_root(w)
            rs = _finalize([mpq(u)], irrep, L, w, cfg)
            if rs is None:
                raise BetheSolveError(f"no physical root for {irrep} L={L}", [])
            rs.e_exact = (u,)
            return [rs]
        found = {}
        rng = np.random.default_rng([cfg.seed, irrep.lam, irrep.mu, L])
        pair = singular_pair(w)
        if pair is not None:
            # pinned pair first: cheap, and the remaining system is smaller
            if M == 2:
                rs = _finalize([], irrep, L, w, cfg, fixed=tuple(mpq(f) for f in pair))
                if rs is not None:
                    found.setdefault(rs.e_key(), rs)
            else:
                _multistart(M - 2, pair, irrep, L, w, cfg, rng, found, d, batches=2)
        if len(found) < d:
            _multistart(M, (), irrep, L, w, cfg, rng, found, d)
        sols = sorted(found.values(), key=lambda s: (float(s.y), s.e_key()))
        if len(sols) < d:
            raise BetheSolveError(f"found {len(sols)} of {d} Bethe solutions for {irrep} L={L}", sols)
        if len(sols) > d:
            log.warning("%s L=%d: %d distinct physical root sets exceed multiplicity %d", irrep, L, len(sols), d)
        return sols
