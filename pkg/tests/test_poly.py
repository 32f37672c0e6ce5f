from fractions import Fraction as F

import mpmath
import sympy
from hypothesis import given, settings, strategies as st

from su3bethe import poly

small_q = st.fractions(min_value=-20, max_value=20, max_denominator=12)


def test_sturm_count():
    p = [F(1), F(0), F(-2)]  # t^2 - 2
    seq = poly.sturm_sequence(p)
    assert poly.count_real_roots(seq, F(-2), F(2)) == 2
    assert poly.count_real_roots(seq, F(0), F(2)) == 1


def test_irrational_roots_refined():
    roots = poly.real_roots([F(1), F(0), F(-2)], digits=40)
    assert [r.exact for r in roots] == [None, None]
    with mpmath.workdps(45):
        assert abs(roots[1].value - mpmath.sqrt(2)) < mpmath.mpf(10) ** -38


def test_no_real_roots():
    assert poly.real_roots([F(1), F(0), F(1)]) == []
    assert poly.count_all_real([F(1), F(0), F(1)]) == 0


@given(st.lists(small_q, min_size=1, max_size=6))
@settings(max_examples=60, deadline=None)
def test_rational_roots_recovered_exactly(rs):
    p = poly.from_roots(rs)
    found = []
    for r in poly.real_roots(p):
        found += [r.exact] * r.multiplicity
    assert found == sorted(rs)


@given(st.lists(small_q, min_size=1, max_size=5), st.lists(st.integers(2, 7), min_size=1, max_size=2))
@settings(max_examples=40, deadline=None)
def test_mixed_roots_against_sympy(rs, squares):
    # rational roots times factors t^2 - k, checked against sympy's isolation
    p = poly.from_roots(rs)
    for k in squares:
        p = poly.multiply(p, [F(1), F(0), F(-k)])
    t = sympy.Symbol("t")
    ref = sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in p], t).real_roots()
    got = []
    for r in poly.real_roots(p, digits=25):
        got += [r.value] * r.multiplicity
    assert len(got) == len(ref)
    with mpmath.workdps(40):
        for a, b in zip(got, ref):
            assert abs(a - mpmath.mpf(str(sympy.N(b, 40)))) < 1e-20


@given(st.lists(small_q, min_size=1, max_size=4), st.lists(st.integers(1, 3), min_size=1, max_size=4))
@settings(max_examples=40, deadline=None)
def test_squarefree_decomposition_reassembles(rs, ks):
    p = [F(1)]
    for r, k in zip(rs, ks):
        p = poly.multiply(p, poly.from_roots([r] * k))
    back = [F(1)]
    for f, k in poly.squarefree_decomposition(p):
        for _ in range(k):
            back = poly.multiply(back, f)
    assert back == poly.monic(p)


def test_gcd_and_division():
    a = poly.from_roots([1, 2, 3])
    b = poly.from_roots([2, 3, 5])
    assert poly.gcd(a, b) == poly.from_roots([2, 3])
    q, r = poly.divmod_poly(a, poly.from_roots([1]))
    assert r == [] and q == poly.from_roots([2, 3])
