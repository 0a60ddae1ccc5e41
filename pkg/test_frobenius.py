from functools import lru_cache

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from drinfeld import Canonical, CanonicalT, DrinfeldModule, ZPower
from ffl_errors import DegreeOutOfTable, NotApplicable, NotMonic, ReducibleF
from finite_field import fq_make
from frobenius import (
    coefficient_congruences,
    deformed_fitting_from_data,
    fitting_ideal,
    frobenius_data,
    frobenius_table,
    mu_prime_power,
    mu_series,
    mu_table,
    theta_action_matrix,
)
from polynomials import MultiPoly, UniPoly, irreducibles, primes_upto

F3 = fq_make(3)
T = UniPoly.theta(F3)
THETA = MultiPoly.variable(F3, "theta")
Z = MultiPoly.variable(F3, "z")


def one(field):
    return UniPoly.one(field)


def test_carlitz_fitting_is_f_minus_one(carlitz3):
    for f in primes_upto(F3, 2):
        assert fitting_ideal(carlitz3, f) == f.to_multi() - 1
        assert fitting_ideal(carlitz3, f, ZPower(1)) == f.to_multi() - Z ** f.degree


def test_rank_two_fitting_at_theta(rank2_f3):
    assert fitting_ideal(rank2_f3, T, ZPower(1)) == THETA - Z ** 2
    assert fitting_ideal(rank2_f3, T) == THETA - 1
    assert fitting_ideal(rank2_f3, T, ZPower(2)) == THETA - Z ** 4


@pytest.mark.parametrize("p", [2, 3])
def test_rank_three_fitting_at_theta(p):
    field = fq_make(p)
    phi = DrinfeldModule.from_spec(field, "[0, 0, 1]")
    theta, z = MultiPoly.variable(field, "theta"), MultiPoly.variable(field, "z")
    assert fitting_ideal(phi, UniPoly.theta(field), ZPower(1)) == theta - z ** 3
    assert fitting_ideal(phi, UniPoly.theta(field)) == theta - 1


def test_theta_action_matrix_shape(rank2_f3):
    f = irreducibles(F3, 2)[0]
    M = theta_action_matrix(rank2_f3, f, ZPower(1))
    assert M.dim == 2


def test_reducible_f_rejected(rank2_f3):
    with pytest.raises(ReducibleF):
        fitting_ideal(rank2_f3, T ** 2)
    with pytest.raises(ReducibleF):
        frobenius_data(rank2_f3, T.scale(2))


def test_frobenius_data_at_theta(rank2_f3):
    data = frobenius_data(rank2_f3, T)
    assert (data.d, data.r0, data.cf) == (1, 2, 2)
    assert data.e == (UniPoly.zero(F3), UniPoly.constant(F3, 2))
    assert data.gekeler_value() == T - one(F3)
    x = MultiPoly.variable(F3, "x")
    assert data.char_poly() == x ** 2 - THETA
    assert data.euler_factor() == 1 - THETA * x ** 2
    assert mu_series(data, 4) == [one(F3), UniPoly.zero(F3), T, UniPoly.zero(F3), T ** 2]
    assert mu_prime_power(data, 2) == T


def test_r0_zero_instance(r0_zero):
    data = frobenius_data(r0_zero, T)
    assert data.r0 == 0 and data.cf is None and data.e == ()
    assert fitting_ideal(r0_zero, T) == THETA
    assert data.gekeler_value() == T
    with pytest.raises(NotApplicable):
        data.char_poly()
    assert mu_series(data, 3) == [one(F3), UniPoly.zero(F3), UniPoly.zero(F3), UniPoly.zero(F3)]
    assert coefficient_congruences(r0_zero, T) == []


@pytest.mark.parametrize("p,l,D", [(2, 1, 6), (3, 1, 6), (2, 2, 6)])
def test_carlitz_mu_is_one(p, l, D):
    field = fq_make(p, l)
    table = mu_table(DrinfeldModule.carlitz(field), D)
    assert len(table.values) == sum(field.q ** d for d in range(D + 1))
    assert all(m.is_one() for m in table.values.values())


def test_mu_table_lookups(rank2_f3):
    table = mu_table(rank2_f3, 4)
    assert table[T ** 2] == T
    assert table[T ** 4] == T ** 2
    assert table[T] == UniPoly.zero(F3)
    with pytest.raises(NotMonic):
        table[T.scale(2)]
    with pytest.raises(DegreeOutOfTable):
        table[T ** 5]
    with pytest.raises(DegreeOutOfTable):
        table.of_degree(5)
    assert len(table.of_degree(2)) == 9
    assert table.data_at(T).r0 == 2


def test_mu_is_multiplicative(rank2_f3):
    table = mu_table(rank2_f3, 4)
    a, b = T ** 2 + one(F3), T + one(F3)
    assert table[a * b] == table[a] * table[b]
    assert table[T ** 2 * b] == table[T ** 2] * table[b]


def test_mu_table_is_thread_independent(rank2_f3):
    assert mu_table(rank2_f3, 3, threads=3).values == mu_table(rank2_f3, 3).values
    assert [d.f for d in frobenius_table(rank2_f3, 2, threads=2)] == primes_upto(F3, 2)


def test_negative_table_degree(rank2_f3):
    with pytest.raises(DegreeOutOfTable):
        mu_table(rank2_f3, -1)


@pytest.mark.parametrize(
    "p,spec",
    [(3, "[1]"), (3, "[0, 1]"), (3, "[1, 1]"), (3, "[theta, 1]"), (3, "[1, 0, 1]"), (2, "[1]"), (2, "[1, 1]"), (2, "[0, 0, 1]")],
)
def test_deformed_fitting_rebuilt_from_data(p, spec):
    field = fq_make(p)
    phi = DrinfeldModule.from_spec(field, spec)
    for f in primes_upto(field, 2):
        data = frobenius_data(phi, f)
        assert fitting_ideal(phi, f) == deformed_fitting_from_data(data)
        assert fitting_ideal(phi, f, ZPower(2)) == deformed_fitting_from_data(data, ZPower(2))
        assert fitting_ideal(phi, f, Canonical(1)) == deformed_fitting_from_data(data, Canonical(1))
        assert fitting_ideal(phi, f, CanonicalT(1)) == deformed_fitting_from_data(data, CanonicalT(1))
        assert coefficient_congruences(phi, f, data) == []


@lru_cache(maxsize=None)
def rank_two_table():
    return mu_table(DrinfeldModule.from_spec(F3, "[0, 1]"), 6)


monic_upto_3 = st.lists(st.integers(0, 2), max_size=3).map(lambda c: UniPoly(F3, c + [1]))


@given(monic_upto_3, monic_upto_3)
@settings(deadline=None)
def test_mu_multiplicative_on_coprime_pairs(a, b):
    assume(a.gcd(b).is_one())
    table = rank_two_table()
    assert table[a * b] == table[a] * table[b]
    assert 2 * table[a * b].degree <= (a * b).degree
