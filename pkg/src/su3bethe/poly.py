"""Exact univariate polynomials over the rationals.

A polynomial is a list of Fractions in descending powers, leading
coefficient first; the zero polynomial is ``[]``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import mpmath


def normalize(p):
    p = [Fraction(c) for c in p]
    i = 0
    while i < len(p) and p[i] == 0:
        i += 1
    return p[i:]


def degree(p) -> int:
    return len(p) - 1


def evaluate(p, x):
    acc = 0 * x
    for c in p:
        acc = acc * x + c
    return acc


def derivative(p):
    n = degree(p)
    return normalize([c * (n - i) for i, c in enumerate(p[:-1])])


def monic(p):
    if not p:
        return p
    lead = p[0]
    return [c / lead for c in p]


def divmod_poly(a, b):
    a = normalize(a)
    b = normalize(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if degree(a) < degree(b):
        return [], a
    q = [Fraction(0)] * (degree(a) - degree(b) + 1)
    r = list(a)
    for i in range(len(q)):
        coef = r[i] / b[0]
        q[i] = coef
        if coef:
            for j, bj in enumerate(b):
                r[i + j] -= coef * bj
    return normalize(q), normalize(r[len(q):])


def gcd(a, b):
    a, b = normalize(a), normalize(b)
    while b:
        a, b = b, divmod_poly(a, b)[1]
    return monic(a)


def multiply(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def squarefree_decomposition(p):
    """Yun's algorithm: returns [(f, k)] with p = lead * prod f**k, f monic squarefree."""
    p = monic(normalize(p))
    if degree(p) < 1:
        return []
    out = []
    dp = derivative(p)
    a = gcd(p, dp)
    b = divmod_poly(p, a)[0]
    c = divmod_poly(dp, a)[0]
    d = _sub(c, derivative(b))
    k = 1
    while degree(b) >= 1:
        a = gcd(b, d)
        if degree(a) >= 1:
            out.append((monic(a), k))
        b = divmod_poly(b, a)[0]
        c = divmod_poly(d, a)[0]
        d = _sub(c, derivative(b))
        k += 1
    return out


def _sub(a, b):
    n = max(len(a), len(b))
    a = [Fraction(0)] * (n - len(a)) + list(a)
    b = [Fraction(0)] * (n - len(b)) + list(b)
    return normalize([x - y for x, y in zip(a, b)])


def sturm_sequence(p):
    seq = [normalize(p), derivative(p)]
    while seq[-1] and degree(seq[-1]) > 0:
        r = divmod_poly(seq[-2], seq[-1])[1]
        if not r:
            break
        seq.append([-c for c in r])
    return seq


def _sign_changes(seq, x) -> int:
    signs = [s for s in (_sgn(evaluate(q, x)) for q in seq) if s]
    return sum(1 for u, v in zip(signs, signs[1:]) if u != v)


def _sgn(v) -> int:
    return (v > 0) - (v < 0)


def count_real_roots(seq, a, b) -> int:
    """Distinct real roots in the half-open interval (a, b]."""
    return _sign_changes(seq, a) - _sign_changes(seq, b)


def cauchy_bound(p) -> Fraction:
    p = monic(p)
    return 1 + max((abs(c) for c in p[1:]), default=Fraction(0))


def integer_coefficients(p):
    """Primitive integer polynomial with the same roots as p."""
    p = normalize(p)
    den = 1
    for c in p:
        den = den * c.denominator // math.gcd(den, c.denominator)
    ints = [int(c * den) for c in p]
    g = 0
    for c in ints:
        g = math.gcd(g, c)
    return [c // g for c in ints]


def isolate_real_roots(p):
    """Disjoint intervals (a, b] each holding exactly one real root of squarefree p."""
    seq = sturm_sequence(p)
    bound = cauchy_bound(p)
    out = []
    stack = [(-bound, bound)]
    while stack:
        a, b = stack.pop()
        n = count_real_roots(seq, a, b)
        if n == 0:
            continue
        if n == 1:
            out.append((a, b))
            continue
        mid = (a + b) / 2
        stack.append((a, mid))
        stack.append((mid, b))
    out.sort()
    return out


@dataclass(frozen=True)
class RealRoot:
    value: mpmath.mpf
    exact: Optional[Fraction]
    multiplicity: int
    error: mpmath.mpf


def _rational_root_in(p, ints, a, b) -> tuple[Optional[Fraction], Fraction, Fraction]:
    """Exact rational root of p in (a, b], if any.

    A rational root in lowest terms has its denominator dividing the leading
    integer coefficient; once the bracket is shorter than 1/lead**2 it holds at
    most one such fraction, which limit_denominator finds.
    """
    lead = abs(ints[0])
    fb = _sgn(evaluate(p, b))
    if fb == 0:
        return b, b, b
    # p(a) may itself vanish (a neighbouring root), so bracket on the sign at b
    width = Fraction(1, 2 * lead * lead)
    while b - a > width:
        mid = (a + b) / 2
        fm = _sgn(evaluate(p, mid))
        if fm == 0:
            return mid, mid, mid
        if fm == fb:
            b = mid
        else:
            a = mid
    cand = ((a + b) / 2).limit_denominator(lead)
    if a < cand <= b and evaluate(p, cand) == 0:
        return cand, cand, cand
    return None, a, b


def _refine(p, a: Fraction, b: Fraction, digits: int):
    """Bracketed Newton/bisection in mpmath; returns (root, bracket width)."""
    with mpmath.workdps(digits + 20):
        fb = _sgn(evaluate(p, b))
        lo, hi = mpmath.mpf(a.numerator) / a.denominator, mpmath.mpf(b.numerator) / b.denominator
        dp = derivative(p)
        target = mpmath.mpf(10) ** (-(digits + 5))
        x = (lo + hi) / 2
        for _ in range(20 * digits + 200):
            if hi - lo < target * max(1, abs(x)):
                break
            fx = evaluate(p, x)
            s = _sgn(fx)
            if s == 0:
                lo = hi = x
                break
            if s == fb:
                hi = x
            else:
                lo = x
            dfx = evaluate(dp, x)
            nx = x - fx / dfx if dfx else None
            x = nx if nx is not None and lo < nx < hi else (lo + hi) / 2
        return (lo + hi) / 2, hi - lo


def real_roots(p, digits: int = 30) -> list[RealRoot]:
    """All real roots with multiplicity, ascending, refined to ``digits`` digits."""
    out = []
    for f, k in squarefree_decomposition(p):
        ints = integer_coefficients(f)
        for a, b in isolate_real_roots(f):
            exact, a2, b2 = _rational_root_in(f, ints, a, b)
            if exact is not None:
                with mpmath.workdps(digits + 20):
                    val = mpmath.mpf(exact.numerator) / exact.denominator
                out.append(RealRoot(val, exact, k, mpmath.mpf(0)))
            else:
                val, err = _refine(f, a2, b2, digits)
                out.append(RealRoot(val, None, k, err))
    out.sort(key=lambda r: r.value)
    return out


def count_all_real(p) -> int:
    """Real roots of p counted with multiplicity."""
    total = 0
    for f, k in squarefree_decomposition(p):
        bound = cauchy_bound(f)
        total += k * count_real_roots(sturm_sequence(f), -bound, bound)
    return total


def from_roots(roots):
    """Monic polynomial with the given rational roots."""
    p = [Fraction(1)]
    for r in roots:
        p = multiply(p, [Fraction(1), -Fraction(r)])
    return p
