#!/usr/bin/env python3
"""
L-Values
Taelman L-values, Euler products, special values at s <= 0, and Goss-plane evaluation with certified tails
"""

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dataclass_field
from fractions import Fraction

from ffl_errors import (
    DegreeOutOfTable,
    NegativePrecision,
    NotMonic,
    NZero,
    TableTooSmall,
    UsageError,
)
from frobenius import frobenius_table, mu_series, mu_table
from laurent import TateSeries, bracket
from polynomials import FracPoly, MultiPoly, UniPoly, monic_polys, substitute, sum_fractions


@dataclass(frozen=True)
class GossPoint:
    """
    A point (x, y) of C_inf^x x Z_p in the Laurent model

    y is an integer (any number of p-adic digits available) or a finite
    tuple of base-p digits, least significant first.
    """

    x: TateSeries
    y: object
    m: int = 1

    def __post_init__(self):
        if self.x.is_zero():
            raise UsageError("x must be nonzero")
        top = self.x.top_exponent()
        if not self.x.coeffs[top].is_constant():
            raise UsageError(f"x = {self.x} must have a constant leading coefficient")
        if self.m < 0:
            raise UsageError(f"m must be >= 0, got {self.m}")
        if not isinstance(self.y, int):
            p = self.x.field.p
            if any(not 0 <= b < p for b in self.y):
                raise UsageError(f"y digits must lie in [0, {p - 1}]")

    @property
    def v(self):
        """log_q |x|"""
        return self.x.top_exponent()

    def y_digits(self, m=None):
        """Base-p digits of y_m (l*m of them); a short digit tuple continues with zeros"""
        field = self.x.field
        count = field.l * (self.m if m is None else m)
        if isinstance(self.y, int):
            return padic_digits(self.y, field.p, count)
        digits = tuple(self.y[:count])
        return digits + (0,) * (count - len(digits))

    def y_value(self, m=None):
        p = self.x.field.p
        return sum(b * p ** k for k, b in enumerate(self.y_digits(m)))


@dataclass
class LValueResult:
    """Partial sum, degree cutoff and a log_q bound on everything omitted (None: exact)"""

    series: object
    terms_used: int
    tail_log_q: object = None
    extra: dict = dataclass_field(default_factory=dict)

    def encode(self):
        out = {
            "series": self.series.encode(),
            "terms_used": self.terms_used,
            "tail_log_q": None if self.tail_log_q is None else str(self.tail_log_q),
        }
        for key, value in self.extra.items():
            out[key] = str(value) if isinstance(value, Fraction) else value
        return out


@dataclass(frozen=True)
class TailBound:
    """Per-degree tail exponents, valid for d >= d_threshold"""

    d_threshold: int
    exponents: dict

    def sup(self):
        return max(self.exponents.values()) if self.exponents else None


# --- twisted power sums ---

def _product_of_values(a, zvars):
    value = MultiPoly.one(a.field)
    for v in zvars:
        value = value * substitute(a, v)
    return value


def h_sum(mu, k, zvars):
    """
    H_k = sum over monic a of degree k of mu(a) a(z_1)...a(z_n)

    Args:
        mu: MuTable with mu.D >= k
        k: degree
        zvars: list of z-variable names

    Returns:
        MultiPoly in A[zvars]
    """
    if k > mu.D:
        raise DegreeOutOfTable(f"H_{k} needs mu to degree {k}, table has {mu.D}")
    field = mu.phi.field
    pieces = [m.to_multi() * _product_of_values(a, zvars) for a, m in mu.of_degree(k) if not m.is_zero()]
    return MultiPoly.sum(pieces, field).compact()


def block_fraction(mu, d, zvars, s):
    """Exact sum over monic a of degree d of mu(a) a(z_1)...a(z_n) / a^s"""
    if d > mu.D:
        raise DegreeOutOfTable(f"degree {d} exceeds the table degree {mu.D}")
    field = mu.phi.field
    pairs = [
        (m.to_multi() * _product_of_values(a, zvars), a ** s)
        for a, m in mu.of_degree(d)
        if not m.is_zero()
    ]
    if not pairs:
        return FracPoly.zero(field)
    return sum_fractions(field, pairs)


def _block_weight(phi, s):
    """Lower bound d * w on the valuation of the degree-d block"""
    return s - 1 + Fraction(1, phi.r)


def _run_ordered(fn, items, threads):
    if threads > 1 and len(items) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(fn, items))
    return [fn(item) for item in items]


def taelman_lvalue(phi, n, s, N, mu=None, threads=1):
    """
    L(phi^v, z_1..z_n, s) to precision N for s >= 1

    Blocks of degree d have valuation >= d(s - 1 + 1/r); every block with
    d(s - 1 + 1/r) <= N is summed exactly, then truncated.

    Returns:
        LValueResult with series exact at every exponent >= -N
    """
    if s < 1:
        raise UsageError(f"taelman_lvalue needs s >= 1, got {s}")
    if N < 0:
        raise NegativePrecision(f"precision must be >= 0, got {N}")
    w = _block_weight(phi, s)
    D_star = math.ceil(Fraction(N + 1) / w) - 1
    if mu is None:
        mu = mu_table(phi, D_star, threads)
    elif mu.D < D_star:
        raise TableTooSmall(f"precision {N} needs mu to degree {D_star}, table has {mu.D}")
    zvars = [f"z{k}" for k in range(1, n + 1)]
    blocks = _run_ordered(
        lambda d: block_fraction(mu, d, zvars, s).to_series(N), list(range(D_star + 1)), threads
    )
    series = TateSeries.sum(blocks, phi.field).truncate(N)
    return LValueResult(series, D_star, -(D_star + 1) * w)


# --- Euler products ---

def _term_series(field, mu_a, a, zvars, s, N):
    num = mu_a.to_multi() * _product_of_values(a, zvars)
    return FracPoly(num, a ** s).to_series(N)


def euler_product_truncation(phi, n, s, D, N, threads=1):
    """
    prod over primes f with deg f <= D of D_f(f^-s)^-1, to precision N

    The local factor is expanded from mu(f^i) f(z_1)^i...f(z_n)^i / f^(i s),
    keeping powers whose valuation bound i d (s - 1 + 1/r) is at most N.
    """
    if N < 0:
        raise NegativePrecision(f"precision must be >= 0, got {N}")
    field = phi.field
    zvars = [f"z{k}" for k in range(1, n + 1)]
    w = _block_weight(phi, s)
    result = TateSeries.one(field).truncate(N)
    if D <= 0:
        return LValueResult(result, 0, None)
    for data in frobenius_table(phi, D, threads):
        K = int(Fraction(N) / (data.d * w))
        series = mu_series(data, K)
        local = []
        fpow = UniPoly.one(field)
        for i in range(K + 1):
            if not series[i].is_zero():
                local.append(_term_series(field, series[i], fpow, zvars, s, N))
            fpow = fpow * data.f
        result = (result * TateSeries.sum(local, field).truncate(N)).truncate(N)
    return LValueResult(result, D, None)


def restricted_dirichlet_sum(phi, n, s, D, N, threads=1):
    """
    Sum of mu(a) a(z_1)...a(z_n) / a^s over monic a whose prime factors all
    have degree <= D, to precision N
    """
    if N < 0:
        raise NegativePrecision(f"precision must be >= 0, got {N}")
    field = phi.field
    zvars = [f"z{k}" for k in range(1, n + 1)]
    w = _block_weight(phi, s)
    max_deg = int(Fraction(N) / w)
    local = []
    for data in (frobenius_table(phi, D, threads) if D > 0 else []):
        K = max_deg // data.d
        series = mu_series(data, K)
        fpow = [UniPoly.one(field)]
        for _ in range(K):
            fpow.append(fpow[-1] * data.f)
        local.append((data.d, fpow, series))
    terms = []
    stack = [(UniPoly.one(field), UniPoly.one(field), 0)]
    while stack:
        a, m, start = stack.pop()
        if not m.is_zero():
            terms.append((a, m))
        for j in range(start, len(local)):
            d, fpow, series = local[j]
            e = 1
            while a.degree + e * d <= max_deg:
                stack.append((a * fpow[e], m * series[e], j + 1))
                e += 1
    terms.sort(key=lambda am: (am[0].degree, am[0].coeffs))
    pieces = _run_ordered(lambda am: _term_series(field, am[1], am[0], zvars, s, N), terms, threads)
    return LValueResult(TateSeries.sum(pieces, field).truncate(N), max_deg, None)


# --- special values at s <= 0 ---

def q_digits(k, q):
    """Base-q digits of k >= 0, least significant first"""
    digits = []
    while k:
        digits.append(k % q)
        k //= q
    return digits


def special_value_bound(phi, n, s):
    """Degree beyond which every block of the s <= 0 sum vanishes"""
    ell = sum(q_digits(-s, phi.q))
    return int(Fraction(phi.r * (n + ell + phi.beta), phi.q - 1))


def _special_block(mu, k, zvars, digits):
    field = mu.phi.field
    pieces = []
    for a, m in mu.of_degree(k):
        if m.is_zero():
            continue
        value = m.to_multi() * _product_of_values(a, zvars)
        for j, v in enumerate(digits):
            if v:
                value = value * substitute(a, MultiPoly.variable(field, "theta") ** (field.q ** j)) ** v
        pieces.append(value)
    return MultiPoly.sum(pieces, field).compact()


def special_value_nonpositive(mu, zvars, s):
    """
    L(phi^v, z_1..z_n, s) for s <= 0 as an element of A[z_1..z_n]

    a^|s| is written as prod_j a(theta^(q^j))^(v_j) over the base-q digits
    v_j of |s|; blocks of degree k > r(n + sum v_j + beta)/(q - 1) vanish.
    """
    if s > 0:
        raise UsageError(f"special_value_nonpositive needs s <= 0, got {s}")
    phi = mu.phi
    K = special_value_bound(phi, len(zvars), s)
    if mu.D < K:
        raise TableTooSmall(f"s = {s}, n = {len(zvars)} needs mu to degree {K}, table has {mu.D}")
    digits = q_digits(-s, phi.q)
    blocks = [_special_block(mu, k, zvars, digits) for k in range(K + 1)]
    return MultiPoly.sum(blocks, phi.field).compact()


def special_value_stability(mu, zvars, s, extra=2):
    """True when the blocks of degree K+1..K+extra past the termination bound all vanish"""
    phi = mu.phi
    K = special_value_bound(phi, len(zvars), s)
    if mu.D < K + extra:
        raise TableTooSmall(f"stability check needs mu to degree {K + extra}, table has {mu.D}")
    digits = q_digits(-s, phi.q)
    return all(_special_block(mu, k, zvars, digits).is_zero() for k in range(K + 1, K + extra + 1))


# --- power sums ---

def power_sum(field, i, k, mu=None):
    """sum over monic a of degree i of mu(a) a^(q^k - 1) (mu = 1 when omitted)"""
    exponent = field.q ** k - 1
    total = UniPoly.zero(field)
    if mu is None:
        for a in monic_polys(field, i):
            total = total + a ** exponent
        return total
    for a, m in mu.of_degree(i):
        if not m.is_zero():
            total = total + m * a ** exponent
    return total


# --- binomials and <a>^y ---

def padic_digits(y, p, count):
    """Base-p digits of y mod p^count, least significant first (negative y allowed)"""
    y %= p ** count
    return tuple((y // p ** k) % p for k in range(count))


def lucas_binomial(n, k, p):
    """binom(n, k) mod p by Lucas: product of digitwise binomials (n may be a digit tuple)"""
    if isinstance(n, int) and n < 0:
        raise UsageError(f"negative n = {n}: pass its p-adic digits instead")
    digits_n = list(n) if isinstance(n, (list, tuple)) else list(q_digits(n, p))
    result = 1
    pos = 0
    while k:
        k_digit = k % p
        n_digit = digits_n[pos] if pos < len(digits_n) else 0
        if k_digit > n_digit:
            return 0
        result = result * math.comb(n_digit, k_digit) % p
        k //= p
        pos += 1
    return result % p


def bracket_pow(a, y, N):
    """
    <a>^y = sum_i binom(y, i) (<a> - 1)^i to precision N

    Args:
        a: monic UniPoly
        y: non-negative integer or base-p digit tuple (y_m)
        N: precision

    Returns:
        TateSeries 1-unit
    """
    if not a.is_monic():
        raise NotMonic(f"{a} is not monic")
    if N < 0:
        raise NegativePrecision(f"precision must be >= 0, got {N}")
    field = a.field
    p = field.p
    u = bracket(a) - TateSeries.one(field)
    result = TateSeries.one(field).truncate(N)
    power = TateSeries.one(field)
    for i in range(1, N + 1):
        power = (power * u).truncate(N)
        if power.is_zero():
            break
        c = lucas_binomial(y, i, p)
        if c:
            result = result + power * c
    return result.truncate(N)


# --- tail bounds on the Goss plane ---

def goss_threshold(q, r, n, beta):
    """Smallest d with d >= 3r + r(n + 1 + beta)/(q - 1)"""
    return math.ceil(Fraction(3 * r) + Fraction(r * (n + 1 + beta), q - 1))


def _double_exp(q, r, n, beta, d):
    g = math.floor(Fraction(d, r) - Fraction(n + 1 + beta, q - 1)) - 2
    return Fraction(q) ** g


def goss_tail_exponent(q, r, n, beta, v, d):
    """log_q of |x|^-d q^(d(1 - 1/r)) q^(-q^([d/r - (n+1+beta)/(q-1)] - 2)) with v = log_q |x|"""
    return -d * Fraction(v) + d * (1 - Fraction(1, r)) - _double_exp(q, r, n, beta, d)


def tail_sup_exponent(q, r, n, beta, v, D):
    """
    max over d > D of goss_tail_exponent

    Along each residue class of d mod r the exponent stops increasing once
    the double exponential grows by more than r(1 - 1/r - v) per step.
    """
    if D + 1 < goss_threshold(q, r, n, beta):
        raise UsageError(f"tail bound valid from d = {goss_threshold(q, r, n, beta)}, asked for d > {D}")
    slope = -Fraction(v) + 1 - Fraction(1, r)
    d0 = D + 1
    if slope > 0:
        while _double_exp(q, r, n, beta, d0) * (q - 1) < r * slope:
            d0 += 1
    return tail_bound(q, r, n, beta, v, D, d0 + r - D - 1).sup()


def tail_bound(q, r, n, beta, v, D, width=None):
    """TailBound listing per-degree exponents for D < d <= D + width (width r by default)"""
    width = width or r
    exps = {d: goss_tail_exponent(q, r, n, beta, v, d) for d in range(D + 1, D + width + 1)}
    return TailBound(goss_threshold(q, r, n, beta), exps)


def y_approx_exponent(q, r, v, m, D):
    """max over 1 <= d <= D of -d v + d(1 - 1/r) - q^m"""
    if D < 1:
        return None
    slope = -Fraction(v) + 1 - Fraction(1, r)
    d = D if slope > 0 else 1
    return d * slope - q ** m


def goss_eval(phi, n, point, eps, mu=None, threads=1):
    """
    L(phi^v, z_1..z_n; x, y) with a certified tail

    Args:
        phi: DrinfeldModule
        n: number of z-variables (>= 1)
        point: GossPoint
        eps: target bound as an exact log_q exponent T (the error is < q^T)

    Returns:
        LValueResult; tail_log_q is the larger of the degree tail and the
        y-approximation exponent, both < T
    """
    if n <= 0:
        raise NZero("no certified tail bound on the Goss plane for n = 0")
    T = Fraction(eps)
    if T >= 0:
        raise UsageError(f"eps must be a negative log_q exponent, got {eps}")
    field = phi.field
    q, r, beta = phi.q, phi.r, phi.beta
    v = point.v
    D_star = max(goss_threshold(q, r, n, beta) - 1, 0)
    tail = tail_sup_exponent(q, r, n, beta, v, D_star)
    while tail >= T:
        D_star += 1
        tail = tail_sup_exponent(q, r, n, beta, v, D_star)
    m = max(point.m, 0)
    approx = y_approx_exponent(q, r, v, m, D_star)
    while approx is not None and approx >= T:
        m += 1
        approx = y_approx_exponent(q, r, v, m, D_star)
    N = math.floor(-T)
    digits = point.y_digits(m)
    margin = D_star * (abs(v) + 1) + 1
    if mu is None:
        mu = mu_table(phi, D_star, threads)
    elif mu.D < D_star:
        raise TableTooSmall(f"goss_eval needs mu to degree {D_star}, table has {mu.D}")
    zvars = [f"z{k}" for k in range(1, n + 1)]
    x_inv = point.x.inverse(N + margin)

    def block(d):
        pieces = []
        for a, m_a in mu.of_degree(d):
            if m_a.is_zero():
                continue
            head = TateSeries.from_multipoly(m_a.to_multi() * _product_of_values(a, zvars))
            pieces.append(head * bracket_pow(a, digits, N + margin))
        total = TateSeries.sum(pieces, field)
        return (total * x_inv.power(d, N + margin)).truncate(N)

    blocks = _run_ordered(block, list(range(D_star + 1)), threads)
    series = TateSeries.sum(blocks, field).truncate(N)
    bound = tail if approx is None else max(tail, approx)
    return LValueResult(series, D_star, bound, {"m": m, "y_m": point.y_value(m)})
