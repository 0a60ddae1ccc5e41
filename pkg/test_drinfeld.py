from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from drinfeld import (
    Canonical,
    CanonicalT,
    DrinfeldModule,
    Plain,
    ZPower,
    carlitz_action,
    carlitz_substitute,
    cor_regime,
    deformed_coefficients,
    ell_product,
    exp_coeffs,
    log_coeffs,
    log_radius,
    parse_deformation,
    phi_of_a,
    radius_guard,
    vanishing_bound,
)
from ffl_errors import ParseError, UsageError, ZeroTail
from finite_field import fq_make
from polynomials import FracPoly, MultiPoly, RatFunc, UniPoly
from skew_poly import SkewPoly, skew_mul

F3 = fq_make(3)
T = UniPoly.theta(F3)
THETA = MultiPoly.variable(F3, "theta")

small_a = st.lists(st.integers(0, 2), max_size=3).map(lambda c: UniPoly(F3, c))


def test_module_validation(F3):
    with pytest.raises(ZeroTail):
        DrinfeldModule(F3, [UniPoly.zero(F3)])
    with pytest.raises(UsageError):
        DrinfeldModule(F3, [UniPoly.one(F3), UniPoly.zero(F3)])


def test_rank_and_beta(carlitz3, rank2_f3, r0_zero):
    assert (carlitz3.r, carlitz3.beta, carlitz3.q) == (1, 0, 3)
    assert (rank2_f3.r, rank2_f3.beta) == (2, 0)
    assert r0_zero.beta == 1
    assert rank2_f3.spec() == "[0, 1]"
    assert rank2_f3.coefficient(0) == T
    assert rank2_f3.coefficient(5).is_zero()


def test_carlitz_theta_squared(carlitz3):
    image = phi_of_a(carlitz3, T ** 2)
    assert image.coeffs == (THETA ** 2, THETA + THETA ** 3, MultiPoly.one(F3))


@given(small_a, small_a)
@settings(deadline=None)
def test_phi_is_a_ring_homomorphism(a, b):
    phi = DrinfeldModule.from_spec(F3, "[0, 1]")
    assert phi_of_a(phi, a * b) == skew_mul(phi_of_a(phi, a), phi_of_a(phi, b))
    assert phi_of_a(phi, a + b) == phi_of_a(phi, a) + phi_of_a(phi, b)


def test_deformations(rank2_f3):
    z = MultiPoly.variable(F3, "z")
    assert deformed_coefficients(rank2_f3, ZPower(1)) == [THETA, MultiPoly.zero(F3), z ** 2]
    assert deformed_coefficients(rank2_f3, Plain())[2] == 1
    canonical = deformed_coefficients(rank2_f3, Canonical(1))[2]
    assert canonical == ell_product(F3, 2, ["z1"])
    t = MultiPoly.variable(F3, "t")
    assert deformed_coefficients(rank2_f3, CanonicalT(0))[2] == t ** 2


def test_parse_deformation():
    assert parse_deformation("plain") == Plain()
    assert parse_deformation("z") == ZPower(1)
    assert parse_deformation("z^2") == ZPower(2)
    assert parse_deformation("canonical(2)") == Canonical(2)
    assert parse_deformation("canonical-t(0)") == CanonicalT(0)
    assert parse_deformation(None) == Plain()
    with pytest.raises(ParseError):
        parse_deformation("twisted")
    with pytest.raises(UsageError):
        parse_deformation("canonical(0)")


def test_ell_products():
    z1 = MultiPoly.variable(F3, "z1")
    assert ell_product(F3, 0, ["z1"]) == 1
    assert ell_product(F3, 1, ["z1"]) == z1 - THETA
    assert ell_product(F3, 2, ["z1"]) == (z1 - THETA) * (z1 - THETA ** 3)
    with pytest.raises(UsageError):
        ell_product(F3, -1, ["z1"])


def test_carlitz_action():
    X = MultiPoly.variable(F3, "X")
    assert carlitz_action(F3, T, "X") == THETA * X + X ** 3
    assert carlitz_action(F3, UniPoly.one(F3), "X") == X


def test_carlitz_substitute_sends_ell_to_frobenius_powers():
    X1 = MultiPoly.variable(F3, "X1")
    assert carlitz_substitute(ell_product(F3, 1, ["z1"])) == X1 ** 3
    assert carlitz_substitute(ell_product(F3, 2, ["z1"])) == X1 ** 9
    frac = FracPoly(MultiPoly.variable(F3, "z1"), T)
    assert carlitz_substitute(frac) == FracPoly(THETA * X1 + X1 ** 3, T)
    X2 = MultiPoly.variable(F3, "X2")
    assert carlitz_substitute(THETA, ["z1", "z2"]) == THETA * X1 * X2
    with pytest.raises(UsageError):
        carlitz_substitute(MultiPoly.variable(F3, "t"))
    with pytest.raises(UsageError):
        carlitz_substitute(MultiPoly.variable(F3, "z2"), ["z1"])


def test_carlitz_exp_and_log(carlitz3):
    alpha = exp_coeffs(carlitz3, 3)
    gamma = log_coeffs(carlitz3, 3)
    assert alpha.certified and gamma.certified
    assert alpha[1] == RatFunc(UniPoly.one(F3), T ** 3 - T)
    assert gamma[1] == RatFunc(UniPoly.one(F3), T - T ** 3)
    assert gamma[2] == RatFunc(UniPoly.one(F3), (T - T ** 3) * (T - T ** 9))
    assert skew_mul(alpha.skew(), gamma.skew(), 3) == SkewPoly.one(F3, RatFunc)


def test_rank_two_log_is_certified(rank2_f5):
    table = log_coeffs(rank2_f5, 4)
    assert table.certified
    assert table.N == 4
    assert exp_coeffs(rank2_f5, 4).certified


def test_scaled_coefficients(carlitz3):
    scaled = exp_coeffs(carlitz3, 2).scaled(["z1"])
    z1 = MultiPoly.variable(F3, "z1")
    assert scaled[0] == 1
    assert scaled[1] == FracPoly(z1 - THETA, T ** 3 - T)
    with_t = exp_coeffs(carlitz3, 1).scaled(["z1"], with_t=True)
    assert with_t[1] == FracPoly((z1 - THETA) * MultiPoly.variable(F3, "t"), T ** 3 - T)


def test_negative_table_size(carlitz3):
    with pytest.raises(UsageError):
        exp_coeffs(carlitz3, -1)


def test_log_radius_and_guard(carlitz3, rank2_f5):
    assert log_radius(carlitz3, 1) == (1, Fraction(1))
    assert radius_guard(carlitz3, 1)
    assert not radius_guard(carlitz3, 3)
    i, _ = log_radius(rank2_f5, 1)
    # (0 - 25)/24 > (0 - 5)/4
    assert i == 2


def test_regimes(carlitz3, rank2_f3, rank2_f5):
    assert cor_regime(carlitz3, 2)
    assert not cor_regime(carlitz3, 3)
    assert cor_regime(rank2_f5, 1)
    assert not cor_regime(rank2_f3, 1)
    assert vanishing_bound(rank2_f3, 1) == 1
    assert vanishing_bound(carlitz3, 1) == Fraction(1, 2)
