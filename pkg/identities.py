#!/usr/bin/env python3
"""
Identity Checks
Log-algebraicity, degreewise identities, power sums, vanishing bounds and Fitting-ideal cross-checks
"""

import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dataclass_field
from fractions import Fraction

import numpy as np

import console
from drinfeld import (
    Canonical,
    CanonicalT,
    DrinfeldModule,
    ZPower,
    carlitz_action,
    carlitz_substitute,
    cor_regime,
    exp_coeffs,
    log_coeffs,
    radius_guard,
    vanishing_bound,
)
from ffl_errors import NotApplicable, TableTooSmall, TermBudgetExceeded
from frobenius import (
    coefficient_congruences,
    deformed_fitting_from_data,
    fitting_ideal,
    frobenius_data,
    mu_prime_power,
    mu_series,
    mu_table,
)
from lvalues import (
    block_fraction,
    euler_product_truncation,
    h_sum,
    power_sum,
    restricted_dirichlet_sum,
    special_value_bound,
    special_value_nonpositive,
    special_value_stability,
)
from polynomials import FracPoly, RatFunc, UniPoly, monic_polys_upto, sum_fractions, x_names, z_names

DEFAULT_BUDGET = 10 ** 6
DEFAULT_SLACK = 2
SAMPLE_COUNT = 3


@dataclass
class CheckReport:
    """Verdict of one identity check; a failing report carries a re-checkable witness"""

    name: str
    params: dict
    verdict: str = "pass"
    witness: dict = None
    details: dict = dataclass_field(default_factory=dict)

    @property
    def passed(self):
        return self.verdict == "pass"

    def fail(self, **witness):
        if self.verdict == "pass":
            self.verdict = "fail"
            self.witness = witness
        return self

    def sort_key(self):
        return (self.name, json.dumps(self.params, sort_keys=True, default=str))

    def encode(self):
        out = {
            "name": self.name,
            "params": self.params,
            "verdict": self.verdict,
            "witness": self.witness,
        }
        if self.details:
            out["details"] = self.details
        return out


def _params(phi, **extra):
    params = {"q": phi.q, "phi": phi.spec()}
    params.update(extra)
    return params


def _mu_for(phi, D, mu=None):
    if mu is None:
        return mu_table(phi, D)
    if mu.D < D:
        raise TableTooSmall(f"need mu to degree {D}, table has {mu.D}")
    return mu


# --- log-algebraicity: W_k and Z_k ---

def c_coefficients(mu, zvars, k_max):
    """c_j = sum over monic a of degree j of mu(a) a(z_1)...a(z_n) / a"""
    return [block_fraction(mu, j, zvars, 1) for j in range(k_max + 1)]


def w_coefficients(phi, n, k_max, mu=None):
    """
    W_k = sum_{i+j=k} alpha_i l_i(z_1)...l_i(z_n) tau^i(c_j) in K[z_1..z_n]

    Returns:
        list of FracPoly W_0..W_kmax; W_k.integral is the integrality verdict
    """
    mu = _mu_for(phi, k_max, mu)
    field = phi.field
    zvars = z_names(n)
    alpha = exp_coeffs(phi, k_max)
    c = c_coefficients(mu, zvars, k_max)
    scaled = alpha.scaled(zvars)
    out = []
    for k in range(k_max + 1):
        terms = [scaled[i] * c[k - i].twist(i) for i in range(k + 1) if not alpha[i].is_zero()]
        total = FracPoly.zero(field)
        for t in terms:
            total = total + t
        out.append(total)
    return out


def s_coefficients(mu, xvars, k_max):
    """S_j = sum over monic a of degree j of mu(a) C_a(X_1)...C_a(X_n) / a"""
    field = mu.phi.field
    out = []
    for j in range(k_max + 1):
        pairs = []
        for a, m in mu.of_degree(j):
            if m.is_zero():
                continue
            value = m.to_multi()
            for X in xvars:
                value = value * carlitz_action(field, a, X)
            pairs.append((value, a))
        out.append(sum_fractions(field, pairs) if pairs else FracPoly.zero(field))
    return out


def _estimate_terms(phi, n, k_max):
    return phi.q ** (k_max * n)


def z_coefficients(phi, n, k_max, xvars=None, mu=None, budget=DEFAULT_BUDGET):
    """
    Z_k = sum_{i=0}^k alpha_i S_(k-i)^(q^i) in K[X_1..X_n]

    Raises:
        TermBudgetExceeded: when q^(k_max n) monomials exceed the budget
    """
    estimate = _estimate_terms(phi, n, k_max)
    if estimate > budget:
        raise TermBudgetExceeded(f"Z_k up to k = {k_max} with n = {n} needs ~{estimate} monomials (budget {budget})")
    mu = _mu_for(phi, k_max, mu)
    field = phi.field
    xvars = list(xvars or x_names(n))
    alpha = exp_coeffs(phi, k_max)
    S = s_coefficients(mu, xvars, k_max)
    out = []
    for k in range(k_max + 1):
        total = FracPoly.zero(field)
        for i in range(k + 1):
            if alpha[i].is_zero():
                continue
            total = total + S[k - i].qpower(i) * alpha[i].to_frac()
        out.append(total)
    return out


# --- sampled cross-check (evaluation at X_j = b_j in A) ---

def _carlitz_powers(b, e_max):
    """[C_theta^e(b) for e = 0..e_max]"""
    theta = UniPoly.theta(b.field)
    q = b.field.q
    out = [b]
    for _ in range(e_max):
        y = out[-1]
        out.append(theta * y + y ** q)
    return out


def carlitz_substitute_at(P, values):
    """carlitz_substitute(P) evaluated at X_j = values[z_j], as an element of K"""
    if isinstance(P, FracPoly):
        return RatFunc(carlitz_substitute_at(P.num, values), P.den)
    field = P.field
    P = P.compact()
    rest_vars, slices = P.theta_slices()
    tables = {v: _carlitz_powers(b, P.degree(v) if v in rest_vars else 0) for v, b in values.items()}
    total = UniPoly.zero(field)
    for exps, coeff in slices.items():
        by_var = dict(zip(rest_vars, exps))
        value = coeff
        for v, table in tables.items():
            value = value * table[by_var.get(v, 0)]
        total = total + value
    return total


def z_values_at(phi, mu, k_max, values):
    """Z_0..Z_kmax evaluated at X_j = values[j] without expanding in X"""
    field = phi.field
    alpha = exp_coeffs(phi, k_max)
    S = []
    for j in range(k_max + 1):
        total = RatFunc.from_poly(UniPoly.zero(field))
        for a, m in mu.of_degree(j):
            if m.is_zero():
                continue
            value = m
            for b in values:
                value = value * _carlitz_eval(a, b)
            total = total + RatFunc(value, a)
        S.append(total)
    out = []
    for k in range(k_max + 1):
        total = RatFunc.from_poly(UniPoly.zero(field))
        for i in range(k + 1):
            if not alpha[i].is_zero():
                total = total + S[k - i].twist(i) * alpha[i]
        out.append(total)
    return out


def _carlitz_eval(a, b):
    """C_a(b) for a, b in A"""
    powers = _carlitz_powers(b, a.degree)
    total = UniPoly.zero(a.field)
    for e, c in enumerate(a.coeffs):
        if c:
            total = total + powers[e].scale(c)
    return total


def sample_points(field, n, count=SAMPLE_COUNT, seed=0):
    """Random evaluation points in A of degree <= 1, drawn with numpy's default_rng"""
    rng = np.random.default_rng(seed)
    points = []
    for _ in range(count):
        draw = rng.integers(0, field.q, size=(n, 2))
        point = [UniPoly(field, [int(c) for c in row]) for row in draw]
        if any(b.is_zero() for b in point):
            point = [b if not b.is_zero() else UniPoly.one(field) for b in point]
        points.append(point)
    return points


def check_logalg_vanishing(phi, n, slack=DEFAULT_SLACK, mu=None, budget=DEFAULT_BUDGET, seed=0):
    """
    Z_k integral for k <= bound + slack, Z_k = carlitz_substitute(W_k), and
    Z_k = W_k = 0 for bound < k <= bound + slack, bound = floor(r(n + beta)/(q - 1))
    """
    bound = math.floor(vanishing_bound(phi, n))
    k_max = bound + slack
    report = CheckReport("logalg", _params(phi, n=n, slack=slack, bound=bound))
    mu = _mu_for(phi, k_max, mu)
    W = w_coefficients(phi, n, k_max, mu)
    sampled = _estimate_terms(phi, n, k_max) > budget
    report.details["mode"] = "sampled" if sampled else "exact"
    for k, w in enumerate(W):
        if not w.integral:
            return report.fail(k=k, reason="W_k not integral", value=w.encode())
        if k > bound and not w.is_zero():
            return report.fail(k=k, reason="W_k nonzero past the bound", value=w.encode())
    zvars = z_names(n)
    if sampled:
        for point in sample_points(phi.field, n, seed=seed):
            values = dict(zip(zvars, point))
            Z = z_values_at(phi, mu, k_max, point)
            for k, (w, z) in enumerate(zip(W, Z)):
                image = carlitz_substitute_at(w, values)
                if image != z:
                    return report.fail(k=k, reason="Z_k(b) != (W_k . X)(b)", point=[b.encode() for b in point])
                if not z.is_integral():
                    return report.fail(k=k, reason="Z_k(b) not integral", point=[b.encode() for b in point])
        return report
    Z = z_coefficients(phi, n, k_max, mu=mu, budget=budget)
    for k, (w, z) in enumerate(zip(W, Z)):
        if not z.integral:
            return report.fail(k=k, reason="Z_k not integral", value=z.encode())
        image = carlitz_substitute(w, zvars)
        if image != z:
            return report.fail(k=k, reason="Z_k != carlitz_substitute(W_k)", difference=(z - image).encode())
        if k > bound and not z.is_zero():
            return report.fail(k=k, reason="Z_k nonzero past the bound", value=z.encode())
    return report


# --- degreewise identity and power sums ---

def check_degreewise_identity(phi, n, i_max, mu=None):
    """sum over monic a of degree i of mu(a) a(z_1)...a(z_n)/a = gamma_i l_i(z_1)...l_i(z_n), i <= i_max"""
    if not cor_regime(phi, n):
        raise NotApplicable(f"n = {n} exceeds q/r - (1 + 2 beta) for {phi.spec()}")
    mu = _mu_for(phi, i_max, mu)
    gamma = log_coeffs(phi, i_max)
    zvars = z_names(n)
    rhs = gamma.scaled(zvars)
    report = CheckReport("degreewise", _params(phi, n=n, i_max=i_max))
    for i in range(i_max + 1):
        lhs = block_fraction(mu, i, zvars, 1)
        if lhs != rhs[i]:
            return report.fail(i=i, difference=(lhs - rhs[i]).encode())
    return report


def powersum_formula(gamma, i, k):
    """gamma_i prod_{j<i} (theta^(q^k) - theta^(q^j)); zero for k < i"""
    field = gamma.phi.field
    theta = UniPoly.theta(field)
    value = gamma[i]
    for j in range(i):
        value = value * (theta.twist(k) - theta.twist(j))
    return value


def check_powersum(field, i_max, k_max, phi=None):
    """
    Brute-force sums of mu(a) a^(q^k - 1) over monic a of degree i against
    gamma_i prod_{j<i}(theta^(q^k) - theta^(q^j)) (mu = 1 for the Carlitz module)
    """
    if phi is None:
        carlitz = DrinfeldModule.carlitz(field)
        gamma, mu, spec = log_coeffs(carlitz, i_max), None, carlitz.spec()
    else:
        if phi.beta > Fraction(phi.q, 2 * phi.r) - 1:
            raise NotApplicable(f"beta = {phi.beta} exceeds q/(2r) - 1 for {phi.spec()}")
        gamma, mu, spec = log_coeffs(phi, i_max), mu_table(phi, i_max), phi.spec()
    report = CheckReport("powersum", {"q": field.q, "phi": spec, "i_max": i_max, "k_max": k_max})
    for i in range(i_max + 1):
        for k in range(k_max + 1):
            lhs = RatFunc.from_poly(power_sum(field, i, k, mu))
            rhs = powersum_formula(gamma, i, k)
            if lhs != rhs:
                return report.fail(i=i, k=k, lhs=lhs.encode(), rhs=rhs.encode())
    return report


# --- Fitting ideals ---

def check_fitting_consistency(phi, f, n=1):
    """
    (i) plain = z-deformed at z = 1, (ii) = c(f) P(1), (iii) canonical(n) and
    (iv) canonical-t(n) rebuilt from the Frobenius data, (v) z = 0 slice = f,
    plus the coefficient congruences of the z-deformed phi_f
    """
    report = CheckReport("fitting", _params(phi, f=str(f), n=n))
    data = frobenius_data(phi, f)
    plain = fitting_ideal(phi, f)
    zdef = fitting_ideal(phi, f, ZPower(1))
    report.details["r0"] = data.r0
    if plain != zdef.substitute({"z": 1}):
        return report.fail(route="plain vs z=1", difference=(plain - zdef.substitute({"z": 1})).encode())
    if plain != data.gekeler_value().to_multi():
        return report.fail(route="plain vs c(f)P(1)", value=plain.encode())
    if zdef.substitute({"z": 0}) != f.to_multi():
        return report.fail(route="z=0 slice", value=zdef.substitute({"z": 0}).encode())
    deformations = [CanonicalT(n)] if n == 0 else [Canonical(n), CanonicalT(n)]
    for deformation in deformations:
        direct = fitting_ideal(phi, f, deformation)
        rebuilt = deformed_fitting_from_data(data, deformation)
        if direct != rebuilt:
            return report.fail(route=deformation.label(), difference=(direct - rebuilt).encode())
    failing = coefficient_congruences(phi, f, data)
    if failing:
        return report.fail(route="congruences", indices=failing)
    return report


# --- P polynomial ---

def p_polynomial(phi, n, slack=DEFAULT_SLACK, mu=None):
    """
    P = sum_k W_k (the t = 1 specialization) summed to the vanishing bound plus slack

    Returns:
        (FracPoly, CheckReport); in the n <= q/r - (1 + 2 beta) regime P = 1 is asserted
    """
    bound = math.floor(vanishing_bound(phi, n))
    W = w_coefficients(phi, n, bound + slack, mu)
    total = FracPoly.zero(phi.field)
    for w in W:
        total = total + w
    report = CheckReport("p_polynomial", _params(phi, n=n, slack=slack))
    report.details["integral"] = total.integral
    if not total.integral:
        return total, report.fail(reason="P not integral", value=total.encode())
    if cor_regime(phi, n):
        if not radius_guard(phi, n):
            return total, report.fail(reason="radius guard inequality fails")
        if total != FracPoly.one(phi.field):
            return total, report.fail(reason="P != 1", value=total.encode())
    return total, report


# --- mu, vanishing, Euler products, special values ---

def check_mu_structure(phi, D, mu=None, pair_deg=None, series_len=6):
    """
    Multiplicativity on coprime pairs, deg mu(a) <= (1 - 1/r) deg a, and
    D_f(x) sum_i mu(f^i) x^i = 1 mod x^(series_len + 1)
    """
    mu = _mu_for(phi, D, mu)
    field = phi.field
    pair_deg = D // 2 if pair_deg is None else pair_deg
    report = CheckReport("mu", _params(phi, D=D, pair_deg=pair_deg))
    for a, m in mu.items():
        if phi.r * m.degree > (phi.r - 1) * a.degree:
            return report.fail(reason="degree bound", a=a.encode(), mu=m.encode())
    small = [a for a in monic_polys_upto(field, pair_deg) if a.degree >= 1]
    for a in small:
        for b in small:
            if a.degree + b.degree > D or not a.gcd(b).is_one():
                continue
            if mu[a * b] != mu[a] * mu[b]:
                return report.fail(reason="multiplicativity", a=a.encode(), b=b.encode())
    for data in mu.frobenius:
        series = mu_series(data, series_len)
        euler = data.euler_coeffs()
        for k in range(series_len + 1):
            acc = UniPoly.zero(field)
            for j in range(min(k, len(euler) - 1) + 1):
                acc = acc + euler[j] * series[k - j]
            if acc != (UniPoly.one(field) if k == 0 else UniPoly.zero(field)):
                return report.fail(reason="generating series", f=data.f.encode(), k=k)
        i = 1
        while data.d * i <= D:
            if mu[data.f ** i] != mu_prime_power(data, i):
                return report.fail(reason="table vs series", f=data.f.encode(), i=i)
            i += 1
    return report


def check_h_vanishing(phi, n, slack=3, mu=None):
    """H_k = 0 for floor(r(n + beta)/(q - 1)) < k <= bound + slack"""
    bound = math.floor(vanishing_bound(phi, n))
    mu = _mu_for(phi, bound + slack, mu)
    zvars = z_names(n)
    report = CheckReport("vanishing", _params(phi, n=n, slack=slack, bound=bound))
    nonzero = []
    for k in range(bound + slack + 1):
        H = h_sum(mu, k, zvars)
        if k > bound and not H.is_zero():
            return report.fail(k=k, value=H.encode())
        if not H.is_zero():
            nonzero.append(k)
    report.details["nonzero"] = nonzero
    return report


def check_euler_dirichlet(phi, n, s, D, N):
    """Euler product over primes of degree <= D equals the restricted Dirichlet sum to precision N"""
    report = CheckReport("euler", _params(phi, n=n, s=s, D=D, N=N))
    product = euler_product_truncation(phi, n, s, D, N).series
    dirichlet = restricted_dirichlet_sum(phi, n, s, D, N).series
    if not product.agrees_with(dirichlet, N):
        return report.fail(product=product.encode(), dirichlet=dirichlet.encode())
    return report


def check_special_values(phi, n, s, mu=None, extra=2):
    """The s <= 0 value lies in A[z] and does not change when the cutoff grows by extra"""
    K = special_value_bound(phi, n, s)
    mu = _mu_for(phi, K + extra, mu)
    zvars = z_names(n)
    report = CheckReport("special", _params(phi, n=n, s=s, extra=extra))
    value = special_value_nonpositive(mu, zvars, s)
    report.details["value"] = str(value)
    report.details["cutoff"] = K
    if not special_value_stability(mu, zvars, s, extra):
        return report.fail(reason="blocks past the cutoff do not vanish", cutoff=K)
    return report


# --- runner ---

def run_checks(jobs, threads=1):
    """
    Run independent check jobs (zero-argument callables)

    Jobs raising NotApplicable are skipped with a warning; reports come back
    ordered by (name, parameters).
    """
    def attempt(job):
        try:
            return job()
        except NotApplicable as e:
            console.warn(f"skipped: {e}")
            return None

    if threads > 1 and len(jobs) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(attempt, jobs))
    else:
        results = [attempt(job) for job in jobs]
    reports = [r for r in results if r is not None]
    reports.sort(key=CheckReport.sort_key)
    for report in reports:
        line = f"{report.name} {report.params}"
        if report.passed:
            console.ok(line)
        else:
            console.fail(line)
    return reports
