#!/usr/bin/env python3
"""
Frobenius Data and the Function mu
Fitting ideals of phi(A/fA) via characteristic polynomials, Euler factors, and mu on monic polynomials
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dataclass_field

from drinfeld import Canonical, CanonicalT, Plain, ZPower, deformed_coefficients, phi_of_a
from ffl_errors import (
    DegreeOutOfTable,
    NotApplicable,
    NotMonic,
    ReducibleF,
    StructureViolation,
)
from poly_matrix import PolyMatrix, charpoly_fraction_free
from polynomials import MultiPoly, UniPoly, is_irreducible, primes_upto, substitute, z_names


def _require_prime(f):
    if not f.is_monic() or not is_irreducible(f):
        raise ReducibleF(f"{f} is not a monic irreducible polynomial")


def theta_action_matrix(phi, f, deformation=None):
    """
    Matrix of x -> sum_i c_i x^(q^i) mod f on the basis 1, theta, ..., theta^(d-1)

    Args:
        phi: DrinfeldModule
        f: monic irreducible UniPoly of degree d
        deformation: Plain (default), ZPower, Canonical or CanonicalT

    Returns:
        d x d PolyMatrix with entries in F_q[z-variables, t]
    """
    _require_prime(f)
    field = phi.field
    d = f.degree
    q = field.q
    coeffs = deformed_coefficients(phi, deformation)
    theta = UniPoly.theta(field)
    columns = []
    for k in range(d):
        terms = []
        for i, c in enumerate(coeffs):
            if c.is_zero():
                continue
            power = theta.powmod(k * q ** i, f)
            terms.append(c * power.to_multi())
        image = MultiPoly.sum(terms, field).reduce_theta(f)
        by_degree = image.coefficients_in("theta")
        columns.append([by_degree.get(j, MultiPoly.zero(field)) for j in range(d)])
    rows = [[columns[k][j] for k in range(d)] for j in range(d)]
    return PolyMatrix(field, rows)


def fitting_ideal(phi, f, deformation=None):
    """Monic generator of the Fitting ideal: the charpoly of the theta-action at X = theta"""
    M = theta_action_matrix(phi, f, deformation)
    return charpoly_fraction_free(M, "X").rename({"X": "theta"}).compact()


@dataclass(frozen=True)
class FrobeniusData:
    """
    Local data of phi at the prime f

    e = (e_1, ..., e_r0) with e_i = c(f) p_i and e_r0 = c(f);
    D_f(x) = 1 + sum_i e_i f^(i-1) x^i.
    """

    f: UniPoly
    d: int
    r0: int
    cf: object
    e: tuple = dataclass_field(default=())

    def euler_coeffs(self):
        """Coefficients [1, e_1, e_2 f, ..., e_r0 f^(r0-1)] of D_f"""
        field = self.f.field
        out = [UniPoly.one(field)]
        power = UniPoly.one(field)
        for e_i in self.e:
            out.append(e_i * power)
            power = power * self.f
        return out

    def euler_factor(self):
        """D_f(x) as a MultiPoly in theta and x"""
        field = self.f.field
        x = MultiPoly.variable(field, "x")
        return MultiPoly.sum((c.to_multi() * x ** i for i, c in enumerate(self.euler_coeffs())), field)

    def char_poly(self):
        """P(x) = x^r0 + p_(r0-1) x^(r0-1) + ... + p_0 with p_0 = c(f)^-1 f"""
        if self.r0 == 0:
            raise NotApplicable(f"r0 = 0 at {self.f}: no Frobenius polynomial")
        field = self.f.field
        c_inv = field.inv(self.cf)
        x = MultiPoly.variable(field, "x")
        p = [self.f.scale(c_inv)] + [e_i.scale(c_inv) for e_i in self.e]
        return MultiPoly.sum((c.to_multi() * x ** i for i, c in enumerate(p)), field)

    def gekeler_value(self):
        """c(f) P(1), the generator of the Fitting ideal of phi(A/fA); f when r0 = 0"""
        value = self.f
        for e_i in self.e:
            value = value + e_i
        return value

    def encode(self):
        field = self.f.field
        return {
            "f": self.f.encode(),
            "d": self.d,
            "r0": self.r0,
            "cf": None if self.cf is None else field.encode(self.cf),
            "e": [e_i.encode() for e_i in self.e],
            "Df": [c.encode() for c in self.euler_coeffs()],
        }


def frobenius_data(phi, f):
    """
    Read r0, c(f) and e_i off the z-deformed Fitting ideal f + sum_i e_i z^(d i)

    Raises:
        StructureViolation: a z-exponent not divisible by d, a wrong z = 0 slice,
            or a non-constant top coefficient
    """
    _require_prime(f)
    field = phi.field
    d = f.degree
    ideal = fitting_ideal(phi, f, ZPower(1))
    slices = ideal.coefficients_in("z")
    for k in slices:
        if k % d:
            raise StructureViolation(f"z^{k} in the Fitting ideal at {f} (d = {d})")
    base = slices.get(0, MultiPoly.zero(field))
    if base != f.to_multi():
        raise StructureViolation(f"z = 0 slice {base} differs from f = {f}")
    r0 = max(slices) // d
    e = tuple(slices.get(d * i, MultiPoly.zero(field)).to_unipoly() for i in range(1, r0 + 1))
    cf = None
    if r0:
        top = e[-1]
        if top.degree != 0:
            raise StructureViolation(f"top coefficient {top} at {f} is not a nonzero constant")
        cf = top.coeffs[0]
        for i, e_i in enumerate(e[:-1], start=1):
            if e_i.degree >= d:
                raise StructureViolation(f"deg e_{i} = {e_i.degree} >= d = {d} at {f}")
    return FrobeniusData(f, d, r0, cf, e)


def mu_series(data, K):
    """mu(f^0), ..., mu(f^K): coefficients of 1/D_f(x)"""
    D = data.euler_coeffs()
    field = data.f.field
    out = [UniPoly.one(field)]
    for k in range(1, K + 1):
        acc = UniPoly.zero(field)
        for j in range(1, min(k, data.r0) + 1):
            acc = acc + D[j] * out[k - j]
        out.append(-acc)
    return out


def mu_prime_power(data, i):
    """mu(f^i), the x^i coefficient of the formal inverse of D_f"""
    if i < 0:
        raise NotApplicable(f"mu(f^i) needs i >= 0, got {i}")
    return mu_series(data, i)[i]


def frobenius_table(phi, D, threads=1):
    """FrobeniusData for every prime of degree <= D, in enumeration order"""
    primes = primes_upto(phi.field, D)
    if threads > 1 and len(primes) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(lambda f: frobenius_data(phi, f), primes))
    return [frobenius_data(phi, f) for f in primes]


@dataclass
class MuTable:
    """mu(a) for every monic a with deg a <= D"""

    phi: object
    D: int
    values: dict
    frobenius: list

    def __getitem__(self, a):
        if not a.is_monic():
            raise NotMonic(f"mu is defined on monic polynomials, got {a}")
        if a.degree > self.D:
            raise DegreeOutOfTable(f"deg {a} = {a.degree} exceeds the table degree {self.D}")
        return self.values[a.coeffs]

    def of_degree(self, k):
        """[(a, mu(a))] for monic a of degree k, in enumeration order"""
        if k > self.D:
            raise DegreeOutOfTable(f"degree {k} exceeds the table degree {self.D}")
        field = self.phi.field
        return [
            (UniPoly(field, coeffs), mu)
            for coeffs, mu in sorted(self.values.items(), key=lambda kv: kv[0])
            if len(coeffs) == k + 1
        ]

    def items(self):
        field = self.phi.field
        ordered = sorted(self.values.items(), key=lambda kv: (len(kv[0]), kv[0]))
        return [(UniPoly(field, coeffs), mu) for coeffs, mu in ordered]

    def data_at(self, f):
        for data in self.frobenius:
            if data.f == f:
                return data
        raise DegreeOutOfTable(f"no Frobenius data for {f} in a table of degree {self.D}")

    def encode(self):
        return [{"a": a.encode(), "mu": mu.encode()} for a, mu in self.items()]


def mu_table(phi, D, threads=1):
    """
    Build mu on all monic polynomials of degree <= D

    Every monic a is reached once as a product of prime powers f^e taken in
    enumeration order; mu multiplies across distinct primes.
    """
    if D < 0:
        raise DegreeOutOfTable(f"table degree must be >= 0, got {D}")
    field = phi.field
    frob = frobenius_table(phi, D, threads) if D else []
    powers = []
    for data in frob:
        K = D // data.d
        series = mu_series(data, K)
        fpow = [UniPoly.one(field)]
        for _ in range(K):
            fpow.append(fpow[-1] * data.f)
        powers.append((data.d, fpow, series))
    values = {}
    stack = [(UniPoly.one(field), UniPoly.one(field), 0)]
    while stack:
        a, mu, start = stack.pop()
        values[a.coeffs] = mu
        for j in range(start, len(powers)):
            d, fpow, series = powers[j]
            if a.degree + d > D:
                continue
            e = 1
            while a.degree + e * d <= D:
                stack.append((a * fpow[e], mu * series[e], j + 1))
                e += 1
    return MuTable(phi, D, values, frob)


def deformed_fitting_from_data(data, deformation=None):
    """
    Rebuild a deformed Fitting ideal from the ZPower(1) data

    z^(d i) becomes 1, z^(m d i), prod_k f(z_k)^i, or t^(d i) prod_k f(z_k)^i.
    """
    deformation = deformation or Plain()
    f = data.f
    field = f.field
    if isinstance(deformation, Plain):
        weight = MultiPoly.one(field)
    elif isinstance(deformation, ZPower):
        weight = MultiPoly.variable(field, "z") ** (deformation.m * data.d)
    elif isinstance(deformation, (Canonical, CanonicalT)):
        weight = MultiPoly.one(field)
        for v in z_names(deformation.n):
            weight = weight * substitute(f, v)
        if isinstance(deformation, CanonicalT):
            weight = weight * MultiPoly.variable(field, "t") ** data.d
    else:
        raise NotApplicable(f"unknown deformation {deformation!r}")
    pieces = [f.to_multi()]
    step = MultiPoly.one(field)
    for e_i in data.e:
        step = step * weight
        pieces.append(e_i.to_multi() * step)
    return MultiPoly.sum(pieces, field).compact()


def coefficient_congruences(phi, f, data=None):
    """
    Indices j where the z-deformed phi_f breaks its congruences mod f

    phi~_{f,j} = 0 mod f for j < d, and
    phi~_{f,j} = sum_{i=1}^{j // d} z^(i d) phi~_{-e_i, j - i d} mod f for d <= j <= r0 d.
    """
    data = data or frobenius_data(phi, f)
    field = phi.field
    d = data.d
    deformation = ZPower(1)
    image = phi_of_a(phi, f, deformation)
    z = MultiPoly.variable(field, "z")
    if data.r0 == 0:
        return [j for j, c in enumerate(image.coeffs) if not c.reduce_theta(f).is_zero()]
    shifted = [phi_of_a(phi, -e_i, deformation) for e_i in data.e]
    failing = []
    for j in range(data.r0 * d + 1):
        lhs = image.coefficient(j).reduce_theta(f)
        if j < d:
            if not lhs.is_zero():
                failing.append(j)
            continue
        rhs = MultiPoly.sum(
            (z ** (i * d) * shifted[i - 1].coefficient(j - i * d) for i in range(1, j // d + 1)),
            field,
        ).reduce_theta(f)
        if lhs != rhs:
            failing.append(j)
    return failing


if __name__ == "__main__":
    from drinfeld import DrinfeldModule
    from finite_field import fq_make

    F3 = fq_make(3)
    phi = DrinfeldModule(F3, [UniPoly.zero(F3), UniPoly.one(F3)])
    data = frobenius_data(phi, UniPoly.theta(F3))
    print(f"✓ theta + tau^2 at theta: r0 = {data.r0}, D_f = {data.euler_factor()}")
    table = mu_table(phi, 4)
    print(f"✓ mu table to degree 4: {len(table.values)} entries")
