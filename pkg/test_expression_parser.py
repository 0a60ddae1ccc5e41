import json
from fractions import Fraction

import pytest

from expression_parser import (
    encode_fq,
    encode_multipoly,
    encode_series,
    encode_unipoly,
    parse_expression,
    parse_modulus,
    parse_phi,
    parse_poly,
    parse_rational,
    split_list,
    to_json,
)
from ffl_errors import ParseError
from finite_field import fq_make
from laurent import TateSeries
from polynomials import MultiPoly, UniPoly

F3 = fq_make(3)
F4 = fq_make(2, 2)
THETA = MultiPoly.variable(F3, "theta")


def test_arithmetic_and_precedence():
    assert parse_expression("theta^2 + 2*theta + 1", F3) == (THETA + 1) ** 2
    assert parse_expression("theta**3 - theta", F3) == THETA ** 3 - THETA
    assert parse_expression("-(theta + 1)*theta", F3) == -(THETA + 1) * THETA
    assert parse_expression("  4 ", F3) == 1


def test_minus_binds_looser_than_power():
    assert parse_poly("-theta^2", F3) == -(UniPoly.theta(F3) ** 2)
    assert parse_expression("-theta^2 + 1", F3) == 1 - THETA ** 2
    assert parse_expression("(-theta)^2", F3) == THETA ** 2
    assert parse_expression("2*-theta", F3) == THETA
    assert parse_expression("--theta^3", F3) == THETA ** 3


def test_multivariate_symbols():
    z1, X2 = MultiPoly.variable(F3, "z1"), MultiPoly.variable(F3, "X2")
    assert parse_expression("z1*X2 + t", F3) == z1 * X2 + MultiPoly.variable(F3, "t")


def test_generator_symbol():
    u = parse_expression("u", F4)
    assert u.constant_value() == F4.generator()
    assert parse_expression("u^2 + u + 1", F4).is_zero()


@pytest.mark.parametrize("text", ["theta +", "y", "theta^z", "(theta", "3 $ 1", "", "theta theta"])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse_expression(text, F3)


def test_parse_poly_rejects_other_variables():
    assert parse_poly("theta^2 + 1", F3) == UniPoly(F3, [1, 0, 1])
    with pytest.raises(ParseError):
        parse_poly("theta + z", F3)


def test_parse_phi():
    assert parse_phi("[1]", F3) == [UniPoly.one(F3)]
    assert parse_phi("[0, theta^2+1]", F3) == [UniPoly.zero(F3), UniPoly(F3, [1, 0, 1])]
    with pytest.raises(ParseError):
        parse_phi("[]", F3)
    with pytest.raises(ParseError):
        parse_phi("1, 1", F3)


def test_split_list():
    assert split_list("[a, (b, c), d]") == ["a", "(b, c)", "d"]
    with pytest.raises(ParseError):
        split_list("[a, (b]")
    with pytest.raises(ParseError):
        split_list("[a,,b]")


def test_modulus_and_rational():
    assert parse_modulus("1,1,1") == (1, 1, 1)
    assert parse_modulus("[1, 0, 1]") == (1, 0, 1)
    with pytest.raises(ParseError):
        parse_modulus("1,a")
    assert parse_rational("-10") == Fraction(-10)
    assert parse_rational("-7/2") == Fraction(-7, 2)
    with pytest.raises(ParseError):
        parse_rational("1/0")


def test_canonical_encodings():
    assert encode_unipoly(UniPoly(F3, [1, 0, 2])) == [1, 0, 2]
    assert encode_unipoly(UniPoly(F4, [3, 1])) == [[1, 1], [1, 0]]
    encoded = encode_multipoly(parse_expression("theta - z^2", F3))
    assert encoded == {
        "vars": ["theta", "z"],
        "terms": [{"exps": [1, 0], "coeff": 1}, {"exps": [0, 2], "coeff": 2}],
    }


def test_json_is_deterministic():
    value = {"a": UniPoly.theta(F3), "b": Fraction(1, 2), "c": [THETA + 1]}
    text = to_json(value)
    assert text == to_json(value)
    decoded = json.loads(text)
    assert decoded["b"] == "1/2"
    assert decoded["a"] == [0, 1]


def test_field_and_series_encoders():
    assert encode_fq(F4, 3) == [1, 1]
    assert encode_fq(F3, 2) == 2
    series = TateSeries.from_unipoly(UniPoly.theta(F3)).truncate(2)
    assert encode_series(series) == {
        "precision": 2,
        "terms": {"1": {"vars": [], "terms": [{"exps": [], "coeff": 1}]}},
    }
