#!/usr/bin/env python3
"""
Twisted (Skew) Polynomials
sum_i c_i tau^i with tau * c = tau(c) * tau; tau raises theta to theta^q and fixes z, t, X
"""

from ffl_errors import IncompatibleContexts
from polynomials import FracPoly, MultiPoly, RatFunc, UniPoly

# zero / one of each supported coefficient ring
RING_ZERO = {
    UniPoly: UniPoly.zero,
    RatFunc: lambda field: RatFunc(UniPoly.zero(field)),
    MultiPoly: MultiPoly.zero,
    FracPoly: FracPoly.zero,
}

RING_ONE = {
    UniPoly: UniPoly.one,
    RatFunc: lambda field: RatFunc(UniPoly.one(field)),
    MultiPoly: MultiPoly.one,
    FracPoly: FracPoly.one,
}


class SkewPoly:
    """Element of R{tau} for R one of UniPoly, RatFunc, MultiPoly, FracPoly"""

    __slots__ = ("field", "ring", "coeffs")

    def __init__(self, field, ring, coeffs):
        if ring not in RING_ZERO:
            raise IncompatibleContexts(f"unsupported coefficient ring {ring.__name__}")
        coeffs = list(coeffs)
        for c in coeffs:
            if type(c) is not ring:
                raise IncompatibleContexts(f"coefficient {c!r} is not a {ring.__name__}")
            if c.field != field:
                raise IncompatibleContexts(f"coefficient over {c.field}, expected {field}")
        while coeffs and coeffs[-1].is_zero():
            coeffs.pop()
        self.field = field
        self.ring = ring
        self.coeffs = tuple(coeffs)

    @classmethod
    def constant(cls, field, ring, c):
        return cls(field, ring, [c])

    @classmethod
    def one(cls, field, ring):
        return cls(field, ring, [RING_ONE[ring](field)])

    @classmethod
    def tau(cls, field, ring, k=1):
        zero = RING_ZERO[ring](field)
        return cls(field, ring, [zero] * k + [RING_ONE[ring](field)])

    @property
    def degree(self):
        """tau-degree; -1 for zero"""
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def coefficient(self, i):
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return RING_ZERO[self.ring](self.field)

    def _check(self, other):
        if self.field != other.field or self.ring is not other.ring:
            raise IncompatibleContexts(
                f"{self.ring.__name__} over {self.field} vs {other.ring.__name__} over {other.field}"
            )

    def __eq__(self, other):
        if not isinstance(other, SkewPoly):
            return NotImplemented
        return self.field == other.field and self.ring is other.ring and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"SkewPoly({self})"

    def __str__(self):
        parts = []
        for i, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            text = str(c)
            if i == 0:
                parts.append(text)
                continue
            mono = "tau" if i == 1 else f"tau^{i}"
            parts.append(mono if text == "1" else f"({text})*{mono}")
        return " + ".join(parts) or "0"

    def __add__(self, other):
        self._check(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return SkewPoly(self.field, self.ring, [self.coefficient(i) + other.coefficient(i) for i in range(n)])

    def __neg__(self):
        return SkewPoly(self.field, self.ring, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        return skew_mul(self, other)

    def truncate(self, max_degree):
        return SkewPoly(self.field, self.ring, self.coeffs[: max_degree + 1])

    def scale(self, c):
        """Left multiplication by a coefficient"""
        return SkewPoly(self.field, self.ring, [c * x for x in self.coeffs])

    def map(self, fn, ring=None):
        coeffs = [fn(c) for c in self.coeffs]
        return SkewPoly(self.field, ring or self.ring, coeffs)


def skew_mul(a, b, max_degree=None):
    """
    Product in the twisted polynomial ring

    Args:
        a, b: SkewPoly over the same coefficient ring
        max_degree: optional truncation (terms tau^k with k > max_degree dropped)

    Returns:
        SkewPoly sum_{i,j} a_i tau^i(b_j) tau^(i+j)
    """
    a._check(b)
    if a.is_zero() or b.is_zero():
        return SkewPoly(a.field, a.ring, [])
    top = a.degree + b.degree
    if max_degree is not None:
        top = min(top, max_degree)
    zero = RING_ZERO[a.ring](a.field)
    out = [zero] * (top + 1)
    for i, ai in enumerate(a.coeffs):
        if i > top or ai.is_zero():
            continue
        for j, bj in enumerate(b.coeffs):
            if i + j > top:
                break
            if bj.is_zero():
                continue
            out[i + j] = out[i + j] + ai * bj.twist(i)
    return SkewPoly(a.field, a.ring, out)
