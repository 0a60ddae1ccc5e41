import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ffl_errors import NonSquare, UsageError
from finite_field import fq_make
from poly_matrix import PolyMatrix, charpoly_fraction_free, det_bareiss, det_cofactor
from polynomials import MultiPoly

F3 = fq_make(3)
THETA = MultiPoly.variable(F3, "theta")
Z = MultiPoly.variable(F3, "z")

small_entry = st.tuples(st.integers(0, 2), st.integers(0, 2), st.integers(0, 2)).map(
    lambda c: THETA * c[0] + Z * c[1] + c[2]
)


def matrices(dim):
    return st.lists(st.lists(small_entry, min_size=dim, max_size=dim), min_size=dim, max_size=dim).map(
        lambda rows: PolyMatrix(F3, rows)
    )


def test_non_square_rejected():
    with pytest.raises(NonSquare):
        PolyMatrix(F3, [[1, 2], [0]])


def test_cofactor_dimension_limit():
    with pytest.raises(UsageError):
        det_cofactor(PolyMatrix.identity(F3, 5))


def test_triangular_charpoly():
    M = PolyMatrix(F3, [[THETA, 1], [0, Z]])
    X = MultiPoly.variable(F3, "X")
    assert charpoly_fraction_free(M) == (X - THETA) * (X - Z)


def test_zero_pivot_swaps_rows():
    M = PolyMatrix(F3, [[0, 1], [1, 0]])
    assert det_bareiss(M) == -MultiPoly.one(F3)
    assert det_bareiss(PolyMatrix(F3, [[0, 1], [0, THETA]])).is_zero()


def test_empty_matrix():
    assert det_bareiss(PolyMatrix(F3, [])) == 1


@given(matrices(3))
@settings(deadline=None)
def test_bareiss_matches_cofactor(M):
    assert det_bareiss(M) == det_cofactor(M)


@given(matrices(3))
@settings(deadline=None)
def test_charpoly_evaluation(M):
    cp = charpoly_fraction_free(M, "X")
    assert cp.degree("X") == 3
    # cp(0) = det(-M) = -det(M) in dimension 3
    assert cp.substitute({"X": 0}) == -det_bareiss(M)
    assert cp == charpoly_fraction_free(M, "X", method="cofactor")
