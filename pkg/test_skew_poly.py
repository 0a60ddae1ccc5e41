import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ffl_errors import IncompatibleContexts
from finite_field import fq_make
from polynomials import MultiPoly, RatFunc, UniPoly
from skew_poly import SkewPoly, skew_mul

F3 = fq_make(3)
THETA = UniPoly.theta(F3)


def skew(*coeffs):
    return SkewPoly(F3, UniPoly, [UniPoly(F3, c) for c in coeffs])


small_poly = st.lists(st.integers(0, 2), max_size=3).map(lambda c: UniPoly(F3, c))
skew_polys = st.lists(small_poly, max_size=3).map(lambda cs: SkewPoly(F3, UniPoly, cs))


def test_tau_theta_commutation():
    tau = SkewPoly.tau(F3, UniPoly)
    theta = SkewPoly.constant(F3, UniPoly, THETA)
    # tau * theta = theta^q * tau
    assert tau * theta == SkewPoly(F3, UniPoly, [UniPoly.zero(F3), THETA ** 3])
    assert theta * tau == SkewPoly(F3, UniPoly, [UniPoly.zero(F3), THETA])


def test_trailing_zeros_trimmed():
    assert skew((1,), (), ()).degree == 0
    assert skew().is_zero()
    assert skew().degree == -1


def test_truncated_product():
    a = skew((0, 1), (1,))
    full = a * a
    assert full.degree == 2
    assert skew_mul(a, a, 1) == full.truncate(1)


def test_ring_mismatch():
    with pytest.raises(IncompatibleContexts):
        SkewPoly(F3, UniPoly, [RatFunc.from_poly(THETA)])
    with pytest.raises(IncompatibleContexts):
        skew((1,)) * SkewPoly.one(F3, MultiPoly)
    with pytest.raises(IncompatibleContexts):
        SkewPoly(F3, int, [])


@given(skew_polys, skew_polys, skew_polys)
@settings(deadline=None)
def test_associativity(a, b, c):
    assert (a * b) * c == a * (b * c)


@given(skew_polys, skew_polys, skew_polys)
@settings(deadline=None)
def test_left_distributivity(a, b, c):
    assert a * (b + c) == a * b + a * c


def test_one_is_neutral():
    a = skew((1, 2), (0, 1), (2,))
    one = SkewPoly.one(F3, UniPoly)
    assert one * a == a
    assert a * one == a
    assert a - a == skew()
