from fractions import Fraction as F

import pytest

from su3bethe import bm, poly
from su3bethe.irrep import IrrepLabel, make_sector, so3_content


def _sectors(max_sum):
    for s in range(max_sum + 1):
        for lam in range(s + 1):
            for L in so3_content(IrrepLabel(lam, s - lam)):
                yield make_sector(lam, s - lam, L)


@pytest.mark.parametrize("lam,mu,L,expected", [
    (1, 0, 1, [F(5, 64)]),
    (2, 1, 1, [F(31, 192)]),
    (2, 1, 2, [F(-35, 64)]),
    (2, 1, 3, [F(37, 64)]),
    (2, 2, 0, [F(29, 64)]),
    (2, 2, 2, [F(-99, 64), F(29, 64)]),
    (2, 2, 3, [F(-75, 64)]),
    (2, 2, 4, [F(69, 64)]),
])
def test_published_y_values(lam, mu, L, expected):
    spec = bm.spectrum(bm.y_matrix(make_sector(lam, mu, L)))
    assert spec.exact == expected


def test_y_22_L2_char_poly():
    # cross-checked against the explicit irrep matrices
    assert bm.characteristic_polynomial(bm.y_matrix(make_sector(2, 2, 2))) == [1, F(35, 32), F(-2871, 4096)]


@pytest.mark.parametrize("lam,mu,L,x", [
    (1, 0, 1, [F(-25, 216)]),
    (2, 1, 1, [F(119, 216)]),
    (4, 1, 4, [F(-4)]),
    (0, 0, 0, [F(0)]),
])
def test_x_values_from_oracle(lam, mu, L, x):
    assert bm.spectrum(bm.x_matrix(make_sector(lam, mu, L))).exact == x


def test_x_22_L2_irrational_pair():
    # char poly t^2 - 105/64: roots +-sqrt(105)/8
    spec = bm.spectrum(bm.x_matrix(make_sector(2, 2, 2)))
    assert spec.char_poly == [1, 0, F(-105, 64)]
    assert spec.exact == [None, None]
    assert abs(spec.roots[1] ** 2 - F(105, 64)) < 1e-28


def test_empty_sector_raises():
    with pytest.raises(bm.EmptySectorError, match="empty sector"):
        bm.y_matrix(make_sector(2, 2, 1))
    assert bm.sector_spectra(2, 2, 1) is None


def test_trace_equals_root_sum():
    for s in _sectors(8):
        m = bm.y_matrix(s)
        p = bm.characteristic_polynomial(m)
        assert m.trace() == -p[1]
        assert len(bm.spectrum(m).roots) == s.multiplicity


def test_truncation_is_self_consistent():
    for s in _sectors(8):
        assert bm.beta(s, s.alpha_min - 1, s.alpha_min) == 0
        assert bm.beta(s, s.alpha_max + 1, s.alpha_max) == 0


def test_spectra_are_real():
    for s in _sectors(8):
        for m in (bm.x_matrix(s), bm.y_matrix(s)):
            assert poly.count_all_real(bm.characteristic_polynomial(m)) == s.multiplicity


def test_dense_agrees_with_tridiagonal():
    m = bm.y_matrix(make_sector(4, 4, 4))
    d = m.dense()
    assert d[0][1] == m.sup[0] and d[1][0] == m.sub[0] and d[0][2] == 0
