from collections import Counter

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ffl_errors import IncompatibleContexts, UnknownVariable, ZeroPolynomial
from finite_field import fq_make
from polynomials import (
    FracPoly,
    MultiPoly,
    RatFunc,
    UniPoly,
    irreducibles,
    is_irreducible,
    monic_polys,
    necklace_count,
    poly_factor,
    primes_upto,
    substitute,
    sum_fractions,
    var_key,
)

F2 = fq_make(2)
F3 = fq_make(3)


def uni(field, *coeffs):
    return UniPoly(field, coeffs)


def var(field, name):
    return MultiPoly.variable(field, name)


def polys(field, max_degree=6):
    return st.lists(st.integers(0, field.q - 1), max_size=max_degree + 1).map(lambda c: UniPoly(field, c))


def nonzero_polys(field, max_degree=6):
    return polys(field, max_degree).filter(lambda a: not a.is_zero())


@pytest.mark.parametrize("q,d,expected", [(2, 1, 2), (2, 2, 1), (2, 3, 2), (2, 4, 3), (3, 2, 3), (5, 2, 10)])
def test_necklace_count(q, d, expected):
    assert necklace_count(q, d) == expected


def test_irreducibles_over_f2():
    assert irreducibles(F2, 2) == [uni(F2, 1, 1, 1)]
    assert [f.coeffs for f in irreducibles(F2, 3)] == [(1, 0, 1, 1), (1, 1, 0, 1)]
    assert len(primes_upto(F2, 4)) == 2 + 1 + 2 + 3


def test_is_irreducible():
    assert not is_irreducible(uni(F2, 1, 0, 1))
    assert is_irreducible(uni(F3, 1, 0, 1))
    assert not is_irreducible(UniPoly.one(F3))


def test_monic_polys_order():
    assert [a.coeffs for a in monic_polys(F2, 1)] == [(0, 1), (1, 1)]
    assert len(list(monic_polys(F3, 3))) == 27


def test_factor_rejects_zero():
    with pytest.raises(ZeroPolynomial):
        poly_factor(UniPoly.zero(F3))


def test_mixing_fields_is_an_error():
    with pytest.raises(IncompatibleContexts):
        uni(F2, 1, 1) + uni(F3, 1, 1)


def test_twist_is_frobenius():
    theta = UniPoly.theta(F3)
    assert theta.twist(1) == theta ** 3
    a = uni(F3, 1, 2, 1)
    assert a.twist(2) == a ** 9


def test_unipoly_division():
    a = uni(F3, 2, 0, 1, 1)
    b = uni(F3, 1, 1)
    quot, rem = a.divmod(b)
    assert quot * b + rem == a
    assert rem.degree < b.degree
    with pytest.raises(ArithmeticError):
        a.exact_div(uni(F3, 0, 0, 1))


def test_gcd_and_lcm():
    theta = UniPoly.theta(F3)
    a = theta * (theta + UniPoly.one(F3))
    b = theta ** 2
    assert a.gcd(b) == theta
    assert a.lcm(b) == theta ** 2 * (theta + UniPoly.one(F3))


@given(nonzero_polys(F3), nonzero_polys(F3))
@settings(deadline=None)
def test_factorization_multiset_union(a, b):
    fa, fb, fab = (Counter(dict(poly_factor(x))) for x in (a, b, a * b))
    assert fab == fa + fb


@given(nonzero_polys(F2, 8))
@settings(deadline=None)
def test_factorization_reconstructs(a):
    product = UniPoly.constant(F2, a.lead)
    for f, e in poly_factor(a):
        assert is_irreducible(f) and f.is_monic()
        product = product * f ** e
    assert product == a


@given(polys(F3), polys(F3))
def test_twist_is_multiplicative(a, b):
    assert (a * b).twist(1) == a.twist(1) * b.twist(1)


def test_ratfunc_reduces():
    theta = UniPoly.theta(F3)
    r = RatFunc(theta, theta ** 2)
    assert r.num == UniPoly.one(F3)
    assert r.den == theta
    assert r * RatFunc.from_poly(theta) == RatFunc.from_poly(UniPoly.one(F3))
    assert (r.inverse()).is_integral()
    assert r.twist(1) == RatFunc(UniPoly.one(F3), theta ** 3)


def test_ratfunc_denominator_is_monic():
    r = RatFunc(UniPoly.one(F3), uni(F3, 0, 2))
    assert r.den == UniPoly.theta(F3)
    assert r.num == UniPoly.constant(F3, 2)


def test_variable_order():
    assert sorted(["x", "X2", "t", "z1", "theta", "X1", "z"], key=var_key) == ["theta", "z", "z1", "t", "X1", "X2", "x"]
    with pytest.raises(UnknownVariable):
        var(F3, "y")
    with pytest.raises(UnknownVariable):
        var(F3, "t1")


def test_frobenius_on_multipoly():
    theta, z = var(F3, "theta"), var(F3, "z1")
    assert (theta + z) ** 3 == theta ** 3 + z ** 3
    assert (theta + z).qpower(1) == theta ** 3 + z ** 3
    assert (theta * z).twist(1) == theta ** 3 * z


def test_exact_division_multivariate():
    theta, z = var(F3, "theta"), var(F3, "z1")
    a = (theta - z) * (theta ** 2 + z + 1)
    assert a.exact_div(theta - z) == theta ** 2 + z + 1
    with pytest.raises(ArithmeticError):
        a.exact_div(theta + z * z)


def test_substitute_and_coefficients():
    theta, z = var(F3, "theta"), var(F3, "z")
    p = theta * z ** 2 + z + 2
    assert p.substitute({"z": 1}) == theta + 1 + 2
    assert p.substitute({"z": 0}) == MultiPoly.constant(F3, 2)
    slices = p.coefficients_in("z")
    assert slices[2] == theta and slices[1] == 1
    assert p.rename({"z": "X"}).vars == ("theta", "X")


def test_unipoly_substitute():
    a = uni(F3, 1, 1)
    assert substitute(a, "z1") == var(F3, "z1") + 1
    assert substitute(a, var(F3, "theta") ** 3) == var(F3, "theta") ** 3 + 1


def test_to_unipoly_rejects_other_variables():
    with pytest.raises(UnknownVariable):
        (var(F3, "theta") + var(F3, "z")).to_unipoly()


def test_fracpoly_reduction():
    theta, z = var(F3, "theta"), var(F3, "z1")
    t = UniPoly.theta(F3)
    assert FracPoly(theta * z, t) == z
    assert FracPoly(theta * z, t).integral
    f = FracPoly(z, t)
    assert not f.integral
    assert f * FracPoly.promote(theta, F3) == z
    assert FracPoly(theta * z + theta, t * t) == FracPoly(z + 1, t)


def test_sum_fractions():
    t = UniPoly.theta(F3)
    one = MultiPoly.one(F3)
    total = sum_fractions(F3, [(one, t), (one, t + UniPoly.one(F3))])
    assert total.den == t * (t + UniPoly.one(F3))
    assert total.num == MultiPoly.promote(uni(F3, 1, 2), F3)


def test_fracpoly_series():
    # 1/(theta - 1) = theta^-1 + theta^-2 + ...
    t = UniPoly.theta(F3)
    series = FracPoly(MultiPoly.one(F3), t - UniPoly.one(F3)).to_series(4)
    assert series.precision == 4
    assert sorted(series.coeffs) == [-4, -3, -2, -1]
    assert all(c == 1 for c in series.coeffs.values())


def test_compact_drops_unused_variables():
    constant = MultiPoly(F3, ("theta",), {(0,): 2})
    assert constant.compact().vars == ()
    assert constant.compact() == 2
    assert constant.to_unipoly() == UniPoly.constant(F3, 2)
    z = var(F3, "z1")
    carried = MultiPoly(F3, ("theta", "z1", "z2"), {(0, 1, 0): 1, (0, 0, 0): 1})
    assert carried.compact().vars == ("z1",)
    assert carried.compact() == z + 1
    with pytest.raises(UnknownVariable):
        (var(F3, "theta") * z).with_vars(("z1",))


def test_integer_constants_are_reduced():
    assert MultiPoly.promote(-1, F3) == MultiPoly.constant(F3, 2)
    assert MultiPoly.promote(7, F3) == 1
    assert var(F3, "z").scale(-1) == -var(F3, "z")
    F4 = fq_make(2, 2)
    # below q an int is an element encoding
    assert MultiPoly.promote(3, F4).constant_value() == 3
    assert MultiPoly.promote(5, F4) == 1
