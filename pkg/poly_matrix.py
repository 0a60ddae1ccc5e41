#!/usr/bin/env python3
"""
Polynomial Matrices
Fraction-free determinants and characteristic polynomials over F_q[vars]
"""

from ffl_errors import NonSquare, UsageError
from polynomials import MultiPoly

# Laplace expansion is used up to this dimension when asked for
COFACTOR_MAX_DIM = 4


class PolyMatrix:
    """Square matrix of MultiPoly entries over one field"""

    def __init__(self, field, rows):
        rows = [[MultiPoly.promote(x, field) for x in row] for row in rows]
        d = len(rows)
        if any(len(row) != d for row in rows):
            shape = f"{d}x{[len(row) for row in rows]}"
            raise NonSquare(f"matrix is not square: {shape}")
        self.field = field
        self.rows = rows
        self.dim = d

    @classmethod
    def identity(cls, field, d):
        return cls(field, [[1 if i == j else 0 for j in range(d)] for i in range(d)])

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        return self.dim == other.dim and all(
            a == b for ra, rb in zip(self.rows, other.rows) for a, b in zip(ra, rb)
        )

    def __repr__(self):
        return f"PolyMatrix({self.to_lists()})"

    def to_lists(self):
        return [[str(x) for x in row] for row in self.rows]

    def substitute(self, mapping):
        return PolyMatrix(self.field, [[x.substitute(mapping) for x in row] for row in self.rows])

    def encode(self):
        return [[x.encode() for x in row] for row in self.rows]


def det_bareiss(M):
    """
    Determinant by Bareiss fraction-free elimination

    Every division is exact in the polynomial domain; a zero pivot is
    replaced by a lower row with the sign tracked.
    """
    field = M.field
    n = M.dim
    if n == 0:
        return MultiPoly.one(field)
    a = [list(row) for row in M.rows]
    sign = 1
    prev = MultiPoly.one(field)
    for k in range(n - 1):
        if a[k][k].is_zero():
            swap = next((i for i in range(k + 1, n) if not a[i][k].is_zero()), None)
            if swap is None:
                return MultiPoly.zero(field)
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        pivot = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * pivot - a[i][k] * a[k][j]).exact_div(prev)
        prev = pivot
    det = a[n - 1][n - 1]
    return det if sign == 1 else -det


def det_cofactor(M):
    """Laplace expansion along the first row (small matrices)"""
    if M.dim > COFACTOR_MAX_DIM:
        raise UsageError(f"cofactor expansion limited to dimension {COFACTOR_MAX_DIM}, got {M.dim}")
    return _laplace(M.field, M.rows)


def _laplace(field, rows):
    n = len(rows)
    if n == 0:
        return MultiPoly.one(field)
    if n == 1:
        return rows[0][0]
    terms = []
    for j, entry in enumerate(rows[0]):
        if entry.is_zero():
            continue
        minor = [row[:j] + row[j + 1:] for row in rows[1:]]
        value = entry * _laplace(field, minor)
        terms.append(value if j % 2 == 0 else -value)
    return MultiPoly.sum(terms, field)


def charpoly_fraction_free(M, var="X", method="bareiss"):
    """
    Characteristic polynomial det(var * Id - M)

    Args:
        M: PolyMatrix
        var: name of the new variable
        method: 'bareiss' or 'cofactor'

    Returns:
        MultiPoly, monic of degree dim(M) in var
    """
    field = M.field
    x = MultiPoly.variable(field, var)
    shifted = PolyMatrix(
        field,
        [[(x - entry) if i == j else -entry for j, entry in enumerate(row)] for i, row in enumerate(M.rows)],
    )
    if method == "cofactor":
        return det_cofactor(shifted)
    return det_bareiss(shifted)
