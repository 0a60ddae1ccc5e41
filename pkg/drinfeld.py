#!/usr/bin/env python3
"""
Drinfeld Modules
phi_theta = theta + phi_1 tau + ... + phi_r tau^r, its deformations, exp/log tables and the Carlitz action
"""

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from ffl_errors import ParseError, UsageError, ZeroTail
from polynomials import FracPoly, MultiPoly, RatFunc, UniPoly, z_names
from skew_poly import SkewPoly, skew_mul


class DrinfeldModule:
    """
    A Drinfeld A-module given by phi_theta

    Args:
        field: FieldSpec
        coeffs: [phi_{theta,1}, ..., phi_{theta,r}] as UniPoly (phi_{theta,0} = theta implied)
    """

    def __init__(self, field, coeffs):
        coeffs = [UniPoly(field, c.coeffs) if isinstance(c, UniPoly) else UniPoly.constant(field, c) for c in coeffs]
        if not coeffs or all(c.is_zero() for c in coeffs):
            raise ZeroTail("phi_theta needs a nonzero coefficient of tau^s for some s >= 1")
        if coeffs[-1].is_zero():
            raise UsageError(f"top coefficient phi_{{theta,{len(coeffs)}}} must be nonzero")
        self.field = field
        self.coeffs = tuple(coeffs)
        self.r = len(coeffs)
        self.beta = max(c.degree for c in coeffs if not c.is_zero())
        self.q = field.q

    @classmethod
    def carlitz(cls, field):
        return cls(field, [UniPoly.one(field)])

    @classmethod
    def from_spec(cls, field, text):
        from expression_parser import parse_phi

        return cls(field, parse_phi(text, field))

    def coefficient(self, i):
        """phi_{theta,i}, with phi_{theta,0} = theta"""
        if i == 0:
            return UniPoly.theta(self.field)
        if 1 <= i <= self.r:
            return self.coeffs[i - 1]
        return UniPoly.zero(self.field)

    def key(self):
        return (self.field.key(), tuple(c.coeffs for c in self.coeffs))

    def __eq__(self, other):
        return isinstance(other, DrinfeldModule) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"DrinfeldModule(q={self.q}, phi_theta={self.phi_theta()})"

    def spec(self):
        return "[" + ", ".join(str(c) for c in self.coeffs) + "]"

    def phi_theta(self, ring=UniPoly):
        """phi_theta as a twisted polynomial over UniPoly or MultiPoly"""
        coeffs = [self.coefficient(i) for i in range(self.r + 1)]
        if ring is MultiPoly:
            coeffs = [c.to_multi() for c in coeffs]
        elif ring is RatFunc:
            coeffs = [RatFunc.from_poly(c) for c in coeffs]
        return SkewPoly(self.field, ring, coeffs)

    def encode(self):
        return {
            "q": self.q,
            "r": self.r,
            "beta": self.beta,
            "phi": [c.encode() for c in self.coeffs],
        }


# --- deformations ---

@dataclass(frozen=True)
class Plain:
    def label(self):
        return "plain"

    def factor(self, field, i):
        return MultiPoly.one(field)


@dataclass(frozen=True)
class ZPower:
    """phi_{theta,i} -> z^(m i) phi_{theta,i}"""

    m: int = 1

    def __post_init__(self):
        if self.m < 1:
            raise UsageError(f"z-deformation needs m >= 1, got {self.m}")

    def label(self):
        return f"z^{self.m}"

    def factor(self, field, i):
        return MultiPoly.variable(field, "z") ** (self.m * i)


@dataclass(frozen=True)
class Canonical:
    """phi_{theta,i} -> l_i(z_1)...l_i(z_n) phi_{theta,i}"""

    n: int = 1

    def __post_init__(self):
        if self.n < 1:
            raise UsageError(f"canonical deformation needs n >= 1, got {self.n}")

    def label(self):
        return f"canonical({self.n})"

    def factor(self, field, i):
        return ell_product(field, i, z_names(self.n))


@dataclass(frozen=True)
class CanonicalT:
    """phi_{theta,i} -> t^i l_i(z_1)...l_i(z_n) phi_{theta,i}"""

    n: int = 0

    def __post_init__(self):
        if self.n < 0:
            raise UsageError(f"t-deformation needs n >= 0, got {self.n}")

    def label(self):
        return f"canonical-t({self.n})"

    def factor(self, field, i):
        return MultiPoly.variable(field, "t") ** i * ell_product(field, i, z_names(self.n))


_DEFORMATION_PATTERNS = [
    (re.compile(r"^plain$"), lambda m: Plain()),
    (re.compile(r"^z(?:\^(\d+))?$"), lambda m: ZPower(int(m.group(1) or 1))),
    (re.compile(r"^canonical\((\d+)\)$"), lambda m: Canonical(int(m.group(1)))),
    (re.compile(r"^canonical-t\((\d+)\)$"), lambda m: CanonicalT(int(m.group(1)))),
]


def parse_deformation(text):
    """Read 'plain', 'z^m', 'canonical(n)' or 'canonical-t(n)'"""
    compact = re.sub(r"\s+", "", text or "plain")
    for pattern, build in _DEFORMATION_PATTERNS:
        match = pattern.match(compact)
        if match:
            return build(match)
    raise ParseError(f"unknown deformation {text!r} (plain | z^m | canonical(n) | canonical-t(n))")


def deformed_coefficients(phi, deformation=None):
    """[theta, c_1 phi_1, ..., c_r phi_r] as MultiPoly for the chosen deformation"""
    deformation = deformation or Plain()
    field = phi.field
    out = [UniPoly.theta(field).to_multi()]
    for i in range(1, phi.r + 1):
        out.append(deformation.factor(field, i) * phi.coefficient(i).to_multi())
    return out


def deformed_phi_theta(phi, deformation=None):
    return SkewPoly(phi.field, MultiPoly, deformed_coefficients(phi, deformation))


def phi_of_a(phi, a, deformation=None):
    """
    Image of a in the twisted polynomial ring, by Horner evaluation

    Args:
        phi: DrinfeldModule
        a: UniPoly in A
        deformation: Plain (default), ZPower, Canonical or CanonicalT

    Returns:
        SkewPoly with MultiPoly coefficients
    """
    field = phi.field
    step = deformed_phi_theta(phi, deformation)
    result = SkewPoly(field, MultiPoly, [])
    for c in reversed(a.coeffs):
        result = skew_mul(result, step) + SkewPoly.constant(field, MultiPoly, MultiPoly.constant(field, c))
    return result


# --- ell products and the Carlitz action ---

@lru_cache(maxsize=None)
def _ell_product(field, i, vars):
    theta = UniPoly.theta(field)
    result = MultiPoly.one(field)
    for v in vars:
        z = MultiPoly.variable(field, v)
        for j in range(i):
            result = result * (z - theta.twist(j).to_multi())
    return result


def ell_product(field, i, vars):
    """prod over v in vars of l_i(v) = prod_{j<i} (v - theta^(q^j))"""
    if i < 0:
        raise UsageError(f"l_i needs i >= 0, got {i}")
    return _ell_product(field, i, tuple(vars))


@lru_cache(maxsize=None)
def _carlitz_action(field, coeffs, X):
    a = UniPoly(field, coeffs)
    image = phi_of_a(DrinfeldModule.carlitz(field), a)
    x = MultiPoly.variable(field, X)
    terms = [c * x ** (field.q ** j) for j, c in enumerate(image.coeffs) if not c.is_zero()]
    return MultiPoly.sum(terms, field)


def carlitz_action(field, a, X="X1"):
    """C_a(X) = sum_j c_j X^(q^j), where C_a = sum_j c_j tau^j"""
    return _carlitz_action(field, a.coeffs, X)


def _x_name(zvar):
    return "X" + zvar[1:]


def carlitz_substitute(P, zvars=None):
    """
    A-linear map sending prod_j z_j^(e_j) to prod_j C_{theta^(e_j)}(X_j)

    Args:
        P: MultiPoly in theta and z-variables, or FracPoly (the map acts on the numerator)
        zvars: the z-variables z_1..z_n of the ambient ring; defaults to those
            occurring in P. A z-free term c goes to c X_1...X_n.

    Returns:
        MultiPoly (or FracPoly) in theta and X-variables
    """
    if isinstance(P, FracPoly):
        return P.map_num(lambda num: carlitz_substitute(num, zvars))
    field = P.field
    P = P.compact()
    rest_vars, slices = P.theta_slices()
    zvars = list(rest_vars if zvars is None else zvars)
    for v in rest_vars:
        if not v.startswith("z") or v not in zvars:
            raise UsageError(f"carlitz_substitute acts on theta and {zvars}, found {v}")
    theta = UniPoly.theta(field)
    pieces = []
    for exps, coeff in slices.items():
        by_var = dict(zip(rest_vars, exps))
        value = coeff.to_multi()
        for v in zvars:
            value = value * carlitz_action(field, theta ** by_var.get(v, 0), _x_name(v))
        pieces.append(value)
    return MultiPoly.sum(pieces, field)


# --- exp and log ---

@dataclass(frozen=True)
class ExpLogTable:
    """alpha_0..alpha_N (exp) or gamma_0..gamma_N (log) over K"""

    kind: str
    entries: tuple
    certified: bool
    phi: DrinfeldModule

    @property
    def N(self):
        return len(self.entries) - 1

    def __getitem__(self, i):
        return self.entries[i]

    def skew(self):
        return SkewPoly(self.phi.field, RatFunc, self.entries)

    def scaled(self, zvars, with_t=False):
        """
        Coefficients of the canonical (or t-deformed) module

        Entry i times l_i(z_1)...l_i(z_n), and t^i when with_t.
        """
        field = self.phi.field
        t = MultiPoly.variable(field, "t")
        out = []
        for i, entry in enumerate(self.entries):
            factor = ell_product(field, i, zvars)
            if with_t:
                factor = factor * t ** i
            out.append(entry.to_frac() * FracPoly.promote(factor, field))
        return out

    def encode(self):
        return {
            "kind": self.kind,
            "certified": self.certified,
            "entries": [e.encode() for e in self.entries],
        }


def _theta_skew(field):
    return SkewPoly.constant(field, RatFunc, RatFunc.from_poly(UniPoly.theta(field)))


@lru_cache(maxsize=None)
def _exp_entries(phi, N):
    field = phi.field
    theta = UniPoly.theta(field)
    entries = [RatFunc.from_poly(UniPoly.one(field))]
    for k in range(1, N + 1):
        acc = RatFunc.from_poly(UniPoly.zero(field))
        for i in range(1, min(phi.r, k) + 1):
            c = phi.coefficient(i)
            if c.is_zero() or entries[k - i].is_zero():
                continue
            acc = acc + entries[k - i].twist(i) * c
        entries.append(acc / (theta.twist(k) - theta))
    return tuple(entries)


@lru_cache(maxsize=None)
def _log_entries(phi, N):
    field = phi.field
    theta = UniPoly.theta(field)
    entries = [RatFunc.from_poly(UniPoly.one(field))]
    for k in range(1, N + 1):
        acc = RatFunc.from_poly(UniPoly.zero(field))
        for i in range(1, min(phi.r, k) + 1):
            c = phi.coefficient(i)
            if c.is_zero() or entries[k - i].is_zero():
                continue
            acc = acc + entries[k - i] * c.twist(k - i)
        entries.append(acc / (theta - theta.twist(k)))
    return tuple(entries)


def _check_exp(phi, entries):
    field = phi.field
    N = len(entries) - 1
    exp = SkewPoly(field, RatFunc, entries)
    theta = _theta_skew(field)
    lhs = skew_mul(exp, theta, N)
    rhs = skew_mul(phi.phi_theta(RatFunc), exp, N)
    return lhs == rhs


def _check_log(phi, entries):
    field = phi.field
    N = len(entries) - 1
    log = SkewPoly(field, RatFunc, entries)
    theta = _theta_skew(field)
    lhs = skew_mul(log, phi.phi_theta(RatFunc), N)
    rhs = skew_mul(theta, log, N)
    return lhs == rhs


def exp_coeffs(phi, N):
    """
    Coefficients of exp_phi = sum alpha_k tau^k

    alpha_k (theta^(q^k) - theta) = sum_{i=1}^{min(r,k)} phi_{theta,i} alpha_{k-i}^(q^i),
    certified by exp * theta = phi_theta * exp modulo tau^(N+1).
    """
    if N < 0:
        raise UsageError(f"N must be >= 0, got {N}")
    entries = _exp_entries(phi, N)
    return ExpLogTable("exp", entries, _check_exp(phi, entries), phi)


def log_coeffs(phi, N):
    """
    Coefficients of log_phi = sum gamma_k tau^k

    gamma_k (theta - theta^(q^k)) = sum_{i=1}^{min(r,k)} gamma_{k-i} phi_{theta,i}^(q^(k-i)),
    certified by log * phi_theta = theta * log and exp(log) = 1 modulo tau^(N+1).
    """
    if N < 0:
        raise UsageError(f"N must be >= 0, got {N}")
    entries = _log_entries(phi, N)
    certified = _check_log(phi, entries)
    if certified:
        composed = skew_mul(SkewPoly(phi.field, RatFunc, _exp_entries(phi, N)), SkewPoly(phi.field, RatFunc, entries), N)
        certified = composed == SkewPoly.one(phi.field, RatFunc)
    return ExpLogTable("log", entries, certified, phi)


# --- convergence diagnostics ---

def log_radius(phi, n=0):
    """
    Index i(phi) and the log_q radius of convergence of the log of the
    canonical deformation in n variables

    Returns:
        (i, Fraction) with i maximizing (deg phi_s - q^s)/(q^s - 1), smallest on ties
    """
    q = phi.q
    best = None
    for s in range(1, phi.r + 1):
        c = phi.coefficient(s)
        if c.is_zero():
            continue
        value = Fraction(c.degree - q ** s, q ** s - 1)
        if best is None or value > best[1]:
            best = (s, value)
    if best is None:
        raise ZeroTail("all phi_{theta,s} vanish for s >= 1")
    i = best[0]
    geometric = (q ** i - 1) // (q - 1)
    exponent = Fraction(q ** i - phi.coefficient(i).degree - n * geometric, q ** i - 1)
    return i, exponent


def radius_guard(phi, n):
    """deg phi_{theta,i} + n(1 + q + ... + q^(i-1)) < q^i for i = i(phi)"""
    i, _ = log_radius(phi, n)
    q = phi.q
    return phi.coefficient(i).degree + n * ((q ** i - 1) // (q - 1)) < q ** i


def cor_regime(phi, n):
    """n <= q/r - (1 + 2 beta)"""
    return Fraction(n) <= Fraction(phi.q, phi.r) - (1 + 2 * phi.beta)


def vanishing_bound(phi, n):
    """r(n + beta)/(q - 1)"""
    return Fraction(phi.r * (n + phi.beta), phi.q - 1)


if __name__ == "__main__":
    from finite_field import fq_make

    F3 = fq_make(3)
    C = DrinfeldModule.carlitz(F3)
    print(f"✓ C_theta^2 = {phi_of_a(C, UniPoly.theta(F3) ** 2)}")
    table = log_coeffs(C, 4)
    print(f"{'✓' if table.certified else '✗'} log_C certified to tau^4: gamma_2 = {table[2]}")
    print(f"✓ log radius (n=1): {log_radius(C, 1)}")
