import pytest
from hypothesis import given
from hypothesis import strategies as st

from ffl_errors import NoDefaultModulus, NonPrimeP, ReducibleModulus, UsageError
from finite_field import DEFAULT_MODULI, fq_make

FIELD_KEYS = [(2, 1), (3, 1), (5, 1), (2, 2), (3, 2), (2, 3)]


def field_and_elements(count):
    return st.sampled_from(FIELD_KEYS).flatmap(
        lambda key: st.tuples(st.just(fq_make(*key)), *[st.integers(0, key[0] ** key[1] - 1)] * count)
    )


def test_non_prime_characteristic_rejected():
    with pytest.raises(NonPrimeP):
        fq_make(4)


def test_reducible_modulus_rejected():
    # u^2 + 1 = (u + 1)^2 over F_2
    with pytest.raises(ReducibleModulus):
        fq_make(2, 2, (1, 0, 1))


def test_missing_default_modulus():
    with pytest.raises(NoDefaultModulus):
        fq_make(11, 3)


def test_table_order_limit():
    with pytest.raises(UsageError):
        fq_make(2, 11, (1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1))


def test_f4_generator_satisfies_modulus(F4):
    u = F4.generator()
    # u^2 = u + 1 in F_2[u]/(u^2 + u + 1)
    assert F4.mul(u, u) == F4.add(u, 1)
    assert F4.power(u, 3) == 1


def test_default_moduli_build():
    for p, l in DEFAULT_MODULI:
        field = fq_make(p, l)
        assert field.q == p ** l
        assert len(list(field.nonzero())) == field.q - 1


def test_fields_are_cached():
    assert fq_make(3) is fq_make(3)


def test_encode_uses_digits_for_extensions(F4, F5):
    assert F5.encode(4) == 4
    assert F4.encode(3) == [1, 1]
    assert F4.decode([1, 1]) == 3
    with pytest.raises(UsageError):
        F4.from_digits([2, 0])


@given(field_and_elements(3))
def test_field_axioms(args):
    field, a, b, c = args
    assert field.add(a, b) == field.add(b, a)
    assert field.mul(a, field.mul(b, c)) == field.mul(field.mul(a, b), c)
    assert field.mul(a, field.add(b, c)) == field.add(field.mul(a, b), field.mul(a, c))
    assert field.add(a, field.neg(a)) == 0
    assert field.sub(field.add(a, b), b) == a


@given(field_and_elements(1))
def test_inverse_and_frobenius(args):
    field, a = args
    if a:
        assert field.mul(a, field.inv(a)) == 1
    assert field.power(a, field.q) == a
