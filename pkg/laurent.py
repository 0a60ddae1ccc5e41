#!/usr/bin/env python3
"""
Truncated Laurent Series in 1/theta
Finite model of the Tate algebra: coefficients are polynomials in z-variables only
"""

from ffl_errors import NegativePrecision, NotInvertible, NotMonic, UsageError
from polynomials import MultiPoly, UniPoly


class TateSeries:
    """
    sum_e c_e theta^e with c_e in F_q[z_1..z_n]

    precision N means every coefficient of theta^e with e >= -N is exact;
    None marks an exact (terminating) series.
    """

    __slots__ = ("field", "coeffs", "precision")

    def __init__(self, field, coeffs, precision=None):
        kept = {}
        for e, poly in coeffs.items():
            if poly.is_zero():
                continue
            if precision is not None and e < -precision:
                continue
            if "theta" in poly.used_vars():
                raise UsageError(f"series coefficient {poly} may not involve theta")
            kept[e] = poly
        self.field = field
        self.coeffs = kept
        self.precision = precision

    @classmethod
    def zero(cls, field, precision=None):
        return cls(field, {}, precision)

    @classmethod
    def one(cls, field):
        return cls(field, {0: MultiPoly.one(field)})

    @classmethod
    def from_multipoly(cls, poly):
        """Exact series of a polynomial in theta and z-variables"""
        coeffs = {e: c.compact() for e, c in poly.coefficients_in("theta").items()}
        return cls(poly.field, coeffs)

    @classmethod
    def from_unipoly(cls, a):
        return cls.from_multipoly(a.to_multi())

    @staticmethod
    def sum(series, field):
        acc = TateSeries.zero(field)
        for s in series:
            acc = acc + s
        return acc

    # --- valuation ---

    def is_exact(self):
        return self.precision is None

    def is_zero(self):
        return not self.coeffs

    def top_exponent(self):
        return max(self.coeffs) if self.coeffs else None

    def ord(self):
        """Gauss valuation: minus the top theta-exponent (None when no term is known)"""
        top = self.top_exponent()
        return None if top is None else -top

    def _top_bound(self):
        top = self.top_exponent()
        if top is not None:
            return top
        if self.precision is None:
            return None
        return -self.precision - 1

    # --- arithmetic ---

    def _lift(self, other):
        if isinstance(other, TateSeries):
            if other.field != self.field:
                raise UsageError("series over different fields")
            return other
        return TateSeries.from_multipoly(MultiPoly.promote(other, self.field))

    def truncate(self, precision):
        if precision is None:
            return self
        if self.precision is not None:
            precision = min(precision, self.precision)
        return TateSeries(self.field, self.coeffs, precision)

    def __add__(self, other):
        other = self._lift(other)
        if self.precision is None:
            precision = other.precision
        elif other.precision is None:
            precision = self.precision
        else:
            precision = min(self.precision, other.precision)
        coeffs = dict(self.coeffs)
        for e, poly in other.coeffs.items():
            coeffs[e] = coeffs[e] + poly if e in coeffs else poly
        return TateSeries(self.field, coeffs, precision)

    __radd__ = __add__

    def __neg__(self):
        return TateSeries(self.field, {e: -p for e, p in self.coeffs.items()}, self.precision)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __mul__(self, other):
        other = self._lift(other)
        top_a, top_b = self._top_bound(), other._top_bound()
        if top_a is None or top_b is None:
            return TateSeries.zero(self.field)
        precision = None
        if self.precision is not None:
            precision = self.precision - top_b
        if other.precision is not None:
            cand = other.precision - top_a
            precision = cand if precision is None else min(precision, cand)
        groups = {}
        for ea, pa in self.coeffs.items():
            for eb, pb in other.coeffs.items():
                e = ea + eb
                if precision is not None and e < -precision:
                    continue
                groups.setdefault(e, []).append(pa * pb)
        coeffs = {e: MultiPoly.sum(parts, self.field) for e, parts in groups.items()}
        return TateSeries(self.field, coeffs, precision)

    __rmul__ = __mul__

    def shift(self, k):
        """Multiply by theta^k"""
        precision = None if self.precision is None else self.precision - k
        return TateSeries(self.field, {e + k: p for e, p in self.coeffs.items()}, precision)

    def inverse(self, precision):
        """
        Inverse of a series whose top coefficient is a nonzero constant

        Args:
            precision: requested absolute precision of the result

        Returns:
            TateSeries, exact at exponents >= -min(precision, what the input supports)
        """
        top = self.top_exponent()
        if top is None:
            raise NotInvertible("series has no known nonzero coefficient")
        lead = self.coeffs[top]
        if not lead.is_constant():
            raise NotInvertible(f"top coefficient {lead} is not a constant")
        c_inv = self.field.inv(lead.constant_value())
        unit = self.shift(-top) * c_inv
        u = unit - TateSeries.one(self.field)
        target = precision - top
        if target < 0:
            return TateSeries.zero(self.field, precision)
        w = TateSeries.one(self.field).truncate(target)
        term = TateSeries.one(self.field)
        minus_u = -u
        for _ in range(target):
            term = (term * minus_u).truncate(target)
            w = w + term
            if term.is_zero():
                break
        return (w * c_inv).shift(-top).truncate(precision)

    def power(self, e, precision=None):
        if e < 0:
            if precision is None:
                raise UsageError("negative powers need a precision")
            return self.inverse(precision).power(-e, precision)
        result = TateSeries.one(self.field)
        base = self
        while e:
            if e & 1:
                result = (result * base).truncate(precision)
            e >>= 1
            if e:
                base = (base * base).truncate(precision)
        return result.truncate(precision)

    # --- comparison and output ---

    def coefficient(self, e):
        return self.coeffs.get(e, MultiPoly.zero(self.field))

    def agrees_with(self, other, precision):
        """Equal at every exponent >= -precision (both sides must know them)"""
        for s in (self, other):
            if s.precision is not None and s.precision < precision:
                return False
        exps = {e for e in list(self.coeffs) + list(other.coeffs) if e >= -precision}
        return all(self.coefficient(e) == other.coefficient(e) for e in exps)

    def __eq__(self, other):
        if not isinstance(other, TateSeries):
            return NotImplemented
        if self.precision != other.precision:
            return False
        exps = set(self.coeffs) | set(other.coeffs)
        return all(self.coefficient(e) == other.coefficient(e) for e in exps)

    def __hash__(self):
        return hash((self.precision, tuple(sorted((e, p) for e, p in self.coeffs.items()))))

    def __repr__(self):
        return f"TateSeries({self})"

    def __str__(self):
        parts = []
        for e in sorted(self.coeffs, reverse=True):
            poly = self.coeffs[e]
            mono = "" if e == 0 else ("theta" if e == 1 else f"theta^{e}")
            text = str(poly)
            if len(poly.terms) > 1:
                text = f"({text})"
            if mono:
                text = mono if text == "1" else f"{text}*{mono}"
            parts.append(text)
        body = " + ".join(parts) or "0"
        if self.precision is not None:
            body += f" + O(theta^{-self.precision - 1})"
        return body

    def encode(self):
        return {
            "precision": self.precision,
            "terms": {str(e): self.coeffs[e].encode() for e in sorted(self.coeffs, reverse=True)},
        }


def laurent_invert_monic(a, N):
    """
    Expansion of 1/a in 1/theta

    Args:
        a: monic UniPoly
        N: absolute precision (coefficients of theta^e, e >= -N)

    Returns:
        TateSeries g with a*g = 1 + O(theta^-N); top exponent -deg(a)
    """
    if N < 0:
        raise NegativePrecision(f"precision must be >= 0, got {N}")
    if not a.is_monic():
        raise NotMonic(f"{a} is not monic")
    field = a.field
    d = a.degree
    add, mul, neg = field._add, field._mul, field._neg
    lower = a.coeffs[:-1]
    h = []
    for k in range(max(N - d + 1, 0)):
        if k == 0:
            h.append(1)
            continue
        acc = 0
        for i in range(1, min(k, d) + 1):
            acc = add[acc][mul[lower[d - i]][h[k - i]]]
        h.append(neg[acc])
    coeffs = {-d - k: MultiPoly.constant(field, c) for k, c in enumerate(h) if c}
    return TateSeries(field, coeffs, N)


def bracket(a):
    """The 1-unit <a> = a * theta^(-deg a) as an exact series"""
    if not a.is_monic():
        raise NotMonic(f"{a} is not monic")
    return TateSeries.from_unipoly(a).shift(-a.degree)
