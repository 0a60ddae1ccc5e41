#!/usr/bin/env python3
"""
Polynomial Rings over F_q
A = F_q[theta], K = F_q(theta), sparse polynomials in theta, z_k, t, X_k, x and K[vars]
"""

import itertools
import operator
import re
from functools import lru_cache

import numpy as np

from ffl_errors import (
    IncompatibleContexts,
    StructureViolation,
    UnknownVariable,
    ZeroPolynomial,
)

# Canonical variable order: theta first, then z's, t, X's, x
VARIABLE_GROUPS = {"theta": 0, "z": 1, "t": 2, "X": 3, "x": 4}

# Schoolbook below this length, integer convolution above (prime fields only)
CONVOLVE_THRESHOLD = 12

_VAR_PATTERN = re.compile(r"^(theta|z|t|X|x)(\d*)$")


def var_key(name):
    """Sort key placing a variable name in the canonical order"""
    match = _VAR_PATTERN.match(name)
    if not match:
        raise UnknownVariable(f"unknown variable '{name}'")
    head, index = match.groups()
    if head in ("theta", "t", "x") and index:
        raise UnknownVariable(f"unknown variable '{name}'")
    return (VARIABLE_GROUPS[head], int(index) if index else 0)


def is_variable_name(name):
    try:
        var_key(name)
    except UnknownVariable:
        return False
    return True


def z_names(n):
    return [f"z{k}" for k in range(1, n + 1)]


def x_names(n):
    return [f"X{k}" for k in range(1, n + 1)]


def format_coeff(field, c):
    """Render an F_q element; prime-field elements above p/2 print as negatives"""
    if field.l == 1:
        return str(c - field.p if c > field.p // 2 and field.p > 2 else c)
    parts = []
    for i, d in reversed(list(enumerate(field.digits(c)))):
        if d == 0:
            continue
        mono = "" if i == 0 else ("u" if i == 1 else f"u^{i}")
        if not mono:
            parts.append(str(d))
        else:
            parts.append(mono if d == 1 else f"{d}*{mono}")
    text = "+".join(parts) or "0"
    return f"({text})" if len(parts) > 1 else text


def _format_terms(field, names, items):
    """items: iterable of (exps, coeff) in display order"""
    pieces = []
    for exps, c in items:
        mono = "*".join(
            name if e == 1 else f"{name}^{e}"
            for name, e in zip(names, exps) if e
        )
        text = format_coeff(field, c)
        negative = text.startswith("-")
        if negative:
            text = text[1:]
        if mono:
            text = mono if text == "1" else f"{text}*{mono}"
        pieces.append(("-" if negative else "+", text))
    if not pieces:
        return "0"
    sign, first = pieces[0]
    out = ("-" if sign == "-" else "") + first
    for sign, text in pieces[1:]:
        out += f" {sign} {text}"
    return out


class UniPoly:
    """Element of A = F_q[theta]; coefficients ascending, trailing zeros trimmed"""

    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs):
        coeffs = list(coeffs)
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        self.field = field
        self.coeffs = tuple(coeffs)

    @classmethod
    def zero(cls, field):
        return cls(field, ())

    @classmethod
    def one(cls, field):
        return cls(field, (1,))

    @classmethod
    def constant(cls, field, c):
        return cls(field, (c,))

    @classmethod
    def theta(cls, field):
        return cls(field, (0, 1))

    @classmethod
    def monomial(cls, field, c, e):
        return cls(field, (0,) * e + (c,))

    @property
    def degree(self):
        """Degree in theta; -1 for the zero polynomial"""
        return len(self.coeffs) - 1

    @property
    def lead(self):
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self):
        return not self.coeffs

    def is_one(self):
        return self.coeffs == (1,)

    def is_monic(self):
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def key(self):
        return self.coeffs

    def _check(self, other):
        if self.field != other.field:
            raise IncompatibleContexts(f"{self.field} vs {other.field}")

    def __eq__(self, other):
        if isinstance(other, UniPoly):
            return self.field == other.field and self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash((self.field.key(), self.coeffs))

    def __repr__(self):
        return f"UniPoly({self})"

    def __str__(self):
        items = [((e,), c) for e, c in reversed(list(enumerate(self.coeffs))) if c]
        return _format_terms(self.field, ["theta"], items)

    def __add__(self, other):
        self._check(other)
        add = self.field._add
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = add[out[i]][c]
        return UniPoly(self.field, out)

    def __neg__(self):
        neg = self.field._neg
        return UniPoly(self.field, [neg[c] for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        mul = self.field._mul[self.field.coerce(c)]
        return UniPoly(self.field, [mul[x] for x in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        self._check(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return UniPoly.zero(self.field)
        field = self.field
        if field.l == 1 and min(len(a), len(b)) > CONVOLVE_THRESHOLD:
            prod = np.convolve(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64)) % field.p
            return UniPoly(field, prod.tolist())
        add, mul = field._add, field._mul
        out = [0] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca:
                row = mul[ca]
                for j, cb in enumerate(b):
                    if cb:
                        out[i + j] = add[out[i + j]][row[cb]]
        return UniPoly(field, out)

    __rmul__ = __mul__

    def __pow__(self, e):
        result = UniPoly.one(self.field)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def divmod(self, other):
        self._check(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        field = self.field
        add, mul, neg = field._add, field._mul, field._neg
        rem = list(self.coeffs)
        b = other.coeffs
        db = len(b) - 1
        inv = field.inv(b[-1])
        quot = [0] * max(len(rem) - db, 0)
        for shift in range(len(rem) - 1 - db, -1, -1):
            c = mul[rem[shift + db]][inv]
            if c == 0:
                continue
            quot[shift] = c
            nc = neg[c]
            for i, bi in enumerate(b):
                rem[shift + i] = add[rem[shift + i]][mul[nc][bi]]
        return UniPoly(field, quot), UniPoly(field, rem[:db] if db else [])

    def __mod__(self, other):
        return self.divmod(other)[1]

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def exact_div(self, other):
        quot, rem = self.divmod(other)
        if not rem.is_zero():
            raise ArithmeticError(f"{other} does not divide {self}")
        return quot

    def monic(self):
        if self.is_zero():
            raise ZeroPolynomial("the zero polynomial has no monic associate")
        return self.scale(self.field.inv(self.lead))

    def gcd(self, other):
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a if a.is_zero() else a.monic()

    def lcm(self, other):
        if self.is_zero() or other.is_zero():
            return UniPoly.zero(self.field)
        return (self * other.exact_div(self.gcd(other))).monic()

    def powmod(self, e, modulus):
        result = UniPoly.one(self.field) % modulus
        base = self % modulus
        while e:
            if e & 1:
                result = (result * base) % modulus
            base = (base * base) % modulus
            e >>= 1
        return result

    def twist(self, j=1):
        """a(theta) -> a(theta^(q^j)) = a(theta)^(q^j)"""
        if j == 0 or self.degree <= 0:
            return self
        step = self.field.q ** j
        out = [0] * (self.degree * step + 1)
        for e, c in enumerate(self.coeffs):
            out[e * step] = c
        return UniPoly(self.field, out)

    def to_multi(self, var="theta"):
        var_key(var)
        return MultiPoly(self.field, (var,), {(e,): c for e, c in enumerate(self.coeffs) if c})

    def encode(self):
        return [self.field.encode(c) for c in self.coeffs]


def monic_polys(field, d):
    """All monic polynomials of degree d, ordered by ascending coefficient tuple"""
    for lower in itertools.product(range(field.q), repeat=d):
        yield UniPoly(field, lower + (1,))


def monic_polys_upto(field, D):
    for d in range(D + 1):
        yield from monic_polys(field, d)


def is_irreducible(a):
    """Ben-Or test, as in mpyc's gfpx"""
    d = a.degree
    if d <= 0:
        return False
    if d == 1:
        return True
    theta = UniPoly.theta(a.field)
    b = theta
    for _ in range(d // 2):
        b = b.powmod(a.field.q, a)
        if (b - theta).gcd(a).degree > 0:
            return False
    return True


def _mobius(n):
    result, k = 1, 2
    while k * k <= n:
        if n % k == 0:
            n //= k
            if n % k == 0:
                return 0
            result = -result
        k += 1
    return -result if n > 1 else result


def necklace_count(q, d):
    """Number of monic irreducibles of degree d over F_q"""
    total = sum(_mobius(e) * q ** (d // e) for e in range(1, d + 1) if d % e == 0)
    return total // d


@lru_cache(maxsize=None)
def _irreducibles(field, d):
    found = tuple(a for a in monic_polys(field, d) if is_irreducible(a))
    if len(found) != necklace_count(field.q, d):
        raise StructureViolation(
            f"found {len(found)} irreducibles of degree {d} over F_{field.q}, "
            f"expected {necklace_count(field.q, d)}"
        )
    return found


def irreducibles(field, d):
    """
    Monic irreducible polynomials of degree d

    Args:
        field: FieldSpec
        d: degree (>= 1)

    Returns:
        List sorted by ascending coefficient tuple
    """
    return list(_irreducibles(field, d))


def primes_upto(field, D):
    out = []
    for d in range(1, D + 1):
        out.extend(_irreducibles(field, d))
    return out


def poly_factor(a):
    """
    Factor a nonzero polynomial by trial division against enumerated irreducibles

    Returns:
        List of (monic irreducible, multiplicity), sorted by degree then coefficients;
        the product times a.lead reconstructs a
    """
    if a.is_zero():
        raise ZeroPolynomial("cannot factor the zero polynomial")
    rest = a.monic()
    factors = []
    k = 1
    while 2 * k <= rest.degree:
        for f in _irreducibles(a.field, k):
            mult = 0
            while True:
                quot, rem = rest.divmod(f)
                if not rem.is_zero():
                    break
                rest, mult = quot, mult + 1
            if mult:
                factors.append((f, mult))
        k += 1
    if rest.degree > 0:
        factors.append((rest, 1))
    factors.sort(key=lambda fe: (fe[0].degree, fe[0].key()))
    return factors


class RatFunc:
    """Element of K = F_q(theta): reduced num/den with den monic"""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, reduced=False):
        if den is None:
            den = UniPoly.one(num.field)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if not reduced:
            if num.is_zero():
                den = UniPoly.one(num.field)
            else:
                g = num.gcd(den)
                if g.degree > 0:
                    num, den = num.exact_div(g), den.exact_div(g)
            if den.lead != 1:
                c = num.field.inv(den.lead)
                num, den = num.scale(c), den.scale(c)
        self.num = num
        self.den = den

    @property
    def field(self):
        return self.num.field

    @classmethod
    def from_poly(cls, a):
        return cls(a, UniPoly.one(a.field), reduced=True)

    def is_zero(self):
        return self.num.is_zero()

    def is_integral(self):
        return self.den.is_one()

    def __eq__(self, other):
        if isinstance(other, UniPoly):
            other = RatFunc.from_poly(other)
        if isinstance(other, RatFunc):
            return self.num == other.num and self.den == other.den
        return NotImplemented

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        if self.den.is_one():
            return f"RatFunc({self.num})"
        return f"RatFunc(({self.num}) / ({self.den}))"

    def __str__(self):
        if self.den.is_one():
            return str(self.num)
        return f"({self.num}) / ({self.den})"

    @staticmethod
    def _lift(other):
        return RatFunc.from_poly(other) if isinstance(other, UniPoly) else other

    def __add__(self, other):
        other = self._lift(other)
        g = self.den.gcd(other.den)
        a, b = self.den.exact_div(g), other.den.exact_div(g)
        return RatFunc(self.num * b + other.num * a, a * other.den)

    def __neg__(self):
        return RatFunc(-self.num, self.den, reduced=True)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __mul__(self, other):
        other = self._lift(other)
        return RatFunc(self.num * other.num, self.den * other.den)

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("0 has no inverse in K")
        return RatFunc(self.den, self.num)

    def __truediv__(self, other):
        return self * self._lift(other).inverse()

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** (-e)
        return RatFunc(self.num ** e, self.den ** e, reduced=True)

    def twist(self, j=1):
        return RatFunc(self.num.twist(j), self.den.twist(j), reduced=True)

    def to_frac(self):
        return FracPoly(self.num.to_multi(), self.den, reduced=True)

    def encode(self):
        return {"num": self.num.encode(), "den": self.den.encode()}


class MultiPoly:
    """
    Sparse polynomial over F_q

    vars is an ordered tuple of names (canonical order); terms maps exponent
    tuples to nonzero F_q elements. Binary operations merge variable contexts.
    """

    __slots__ = ("field", "vars", "terms")

    def __init__(self, field, vars=(), terms=None):
        vars = tuple(vars)
        terms = terms or {}
        order = sorted(range(len(vars)), key=lambda i: var_key(vars[i]))
        if order != list(range(len(vars))):
            vars = tuple(vars[i] for i in order)
            terms = {tuple(e[i] for i in order): c for e, c in terms.items()}
        if len(set(vars)) != len(vars):
            raise UnknownVariable(f"repeated variable in {vars}")
        self.field = field
        self.vars = vars
        self.terms = {e: c for e, c in terms.items() if c}

    # --- constructors ---

    @classmethod
    def zero(cls, field, vars=()):
        return cls(field, vars, {})

    @classmethod
    def constant(cls, field, c, vars=()):
        return cls(field, vars, {(0,) * len(vars): c})

    @classmethod
    def one(cls, field, vars=()):
        return cls.constant(field, 1, vars)

    @classmethod
    def variable(cls, field, name):
        var_key(name)
        return cls(field, (name,), {(1,): 1})

    @classmethod
    def promote(cls, item, field):
        if isinstance(item, MultiPoly):
            return item
        if isinstance(item, UniPoly):
            return item.to_multi()
        if isinstance(item, int):
            return cls.constant(field, field.coerce(item))
        raise IncompatibleContexts(f"cannot promote {type(item).__name__} to MultiPoly")

    @staticmethod
    def sum(polys, field, vars=()):
        """Sum many polynomials into one accumulator"""
        acc = MultiPoly.zero(field, vars)
        out = dict(acc.terms)
        out_vars = acc.vars
        add = field._add
        for poly in polys:
            if poly.field != field:
                raise IncompatibleContexts(f"{poly.field} vs {field}")
            if poly.vars != out_vars:
                merged = _merge_vars(out_vars, poly.vars)
                if merged != out_vars:
                    out = _remap_terms(out, out_vars, merged)
                    out_vars = merged
                terms = _remap_terms(poly.terms, poly.vars, out_vars)
            else:
                terms = poly.terms
            for e, c in terms.items():
                prev = out.get(e)
                out[e] = c if prev is None else add[prev][c]
        return MultiPoly(field, out_vars, out)

    # --- structure ---

    def is_zero(self):
        return not self.terms

    def used_vars(self):
        return tuple(v for i, v in enumerate(self.vars) if any(e[i] for e in self.terms))

    def compact(self):
        """Drop variables that do not occur"""
        used = self.used_vars()
        if used == self.vars:
            return self
        return self.with_vars(used)

    def with_vars(self, vars):
        """Re-express on another variable list (which must cover the used variables)"""
        vars = tuple(sorted(vars, key=var_key))
        missing = set(self.used_vars()) - set(vars)
        if missing:
            raise UnknownVariable(f"variables {sorted(missing)} not in {vars}")
        return MultiPoly(self.field, vars, _remap_terms(self.terms, self.vars, vars))

    def is_constant(self):
        return all(not any(e) for e in self.terms)

    def constant_value(self):
        """The F_q value of a constant polynomial"""
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        for c in self.terms.values():
            return c
        return 0

    def degree(self, var):
        if var not in self.vars:
            return 0 if self.terms else -1
        i = self.vars.index(var)
        return max((e[i] for e in self.terms), default=-1)

    def coefficients_in(self, var):
        """Split as sum_k coeff_k * var^k; returns {k: MultiPoly without var}"""
        if var not in self.vars:
            return {0: self} if self.terms else {}
        i = self.vars.index(var)
        rest_vars = self.vars[:i] + self.vars[i + 1:]
        groups = {}
        for e, c in self.terms.items():
            groups.setdefault(e[i], {})[e[:i] + e[i + 1:]] = c
        return {k: MultiPoly(self.field, rest_vars, t) for k, t in groups.items()}

    def coefficient(self, var, k):
        return self.coefficients_in(var).get(k, MultiPoly.zero(self.field))

    def theta_slices(self):
        """Group by the non-theta exponents: {rest_exps: UniPoly}, plus the rest vars"""
        if "theta" not in self.vars:
            return self.vars, {e: UniPoly.constant(self.field, c) for e, c in self.terms.items()}
        i = self.vars.index("theta")
        rest_vars = self.vars[:i] + self.vars[i + 1:]
        groups = {}
        for e, c in self.terms.items():
            groups.setdefault(e[:i] + e[i + 1:], {})[e[i]] = c
        slices = {}
        for rest, coeffs in groups.items():
            dense = [0] * (max(coeffs) + 1)
            for k, c in coeffs.items():
                dense[k] = c
            slices[rest] = UniPoly(self.field, dense)
        return rest_vars, slices

    @classmethod
    def from_theta_slices(cls, field, rest_vars, slices):
        vars = ("theta",) + tuple(rest_vars)
        terms = {}
        for rest, poly in slices.items():
            for k, c in enumerate(poly.coeffs):
                if c:
                    terms[(k,) + tuple(rest)] = c
        return cls(field, vars, terms)

    def map_theta_slices(self, fn):
        rest_vars, slices = self.theta_slices()
        return MultiPoly.from_theta_slices(
            self.field, rest_vars, {rest: fn(poly) for rest, poly in slices.items()}
        )

    def reduce_theta(self, f):
        """Reduce every theta-coefficient modulo the univariate f"""
        return self.map_theta_slices(lambda a: a % f)

    def theta_content(self):
        """Monic gcd of all theta-coefficients (0 for the zero polynomial)"""
        g = UniPoly.zero(self.field)
        for poly in self.theta_slices()[1].values():
            g = g.gcd(poly)
            if g.degree == 0:
                break
        return g

    def to_unipoly(self):
        """Convert a polynomial in theta alone"""
        extra = [v for v in self.used_vars() if v != "theta"]
        if extra:
            raise UnknownVariable(f"{self} involves {extra}, expected theta only")
        rest_vars, slices = self.compact().theta_slices()
        return next(iter(slices.values()), UniPoly.zero(self.field))

    # --- arithmetic ---

    def _aligned(self, other):
        if self.field != other.field:
            raise IncompatibleContexts(f"{self.field} vs {other.field}")
        if self.vars == other.vars:
            return self.vars, self.terms, other.terms
        vars = _merge_vars(self.vars, other.vars)
        return (
            vars,
            _remap_terms(self.terms, self.vars, vars),
            _remap_terms(other.terms, other.vars, vars),
        )

    def __eq__(self, other):
        if isinstance(other, (UniPoly, int)):
            other = MultiPoly.promote(other, self.field)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        if self.field != other.field:
            return False
        _, a, b = self._aligned(other)
        return a == b

    def __hash__(self):
        compact = self.compact()
        return hash((self.field.key(), compact.vars, frozenset(compact.terms.items())))

    def __add__(self, other):
        other = MultiPoly.promote(other, self.field)
        vars, a, b = self._aligned(other)
        add = self.field._add
        out = dict(a)
        for e, c in b.items():
            prev = out.get(e)
            out[e] = c if prev is None else add[prev][c]
        return MultiPoly(self.field, vars, out)

    __radd__ = __add__

    def __neg__(self):
        neg = self.field._neg
        return MultiPoly(self.field, self.vars, {e: neg[c] for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-MultiPoly.promote(other, self.field))

    def __rsub__(self, other):
        return MultiPoly.promote(other, self.field) - self

    def scale(self, c):
        mul = self.field._mul[self.field.coerce(c)]
        return MultiPoly(self.field, self.vars, {e: mul[x] for e, x in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        other = MultiPoly.promote(other, self.field)
        vars, a, b = self._aligned(other)
        add, mul = self.field._add, self.field._mul
        out = {}
        plus = operator.add
        for ea, ca in a.items():
            row = mul[ca]
            for eb, cb in b.items():
                e = tuple(map(plus, ea, eb))
                c = row[cb]
                prev = out.get(e)
                out[e] = c if prev is None else add[prev][c]
        return MultiPoly(self.field, vars, out)

    __rmul__ = __mul__

    def __pow__(self, e):
        result = MultiPoly.one(self.field, self.vars)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def exact_div(self, other):
        """Exact division by lex leading terms; raises ArithmeticError if inexact"""
        other = MultiPoly.promote(other, self.field)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        vars, rem, div = self._aligned(other)
        field = self.field
        add, mul, neg = field._add, field._mul, field._neg
        lead_e = max(div)
        inv = field.inv(div[lead_e])
        rem = dict(rem)
        quot = {}
        while rem:
            e = max(rem)
            shift = tuple(x - y for x, y in zip(e, lead_e))
            if any(s < 0 for s in shift):
                raise ArithmeticError("inexact multivariate division")
            c = mul[rem[e]][inv]
            quot[shift] = c
            nc = neg[c]
            for ed, cd in div.items():
                key = tuple(map(operator.add, shift, ed))
                value = add[rem.get(key, 0)][mul[nc][cd]]
                if value:
                    rem[key] = value
                else:
                    rem.pop(key, None)
        return MultiPoly(field, vars, quot)

    # --- substitutions and Frobenius actions ---

    def twist(self, j=1):
        """tau^j: theta -> theta^(q^j); z, t, X, x fixed"""
        if j == 0 or "theta" not in self.vars:
            return self
        i = self.vars.index("theta")
        step = self.field.q ** j
        return MultiPoly(
            self.field,
            self.vars,
            {e[:i] + (e[i] * step,) + e[i + 1:]: c for e, c in self.terms.items()},
        )

    def qpower(self, j=1):
        """The q^j-th power: every exponent scaled (coefficients are F_q-fixed)"""
        if j == 0:
            return self
        step = self.field.q ** j
        return MultiPoly(self.field, self.vars, {tuple(x * step for x in e): c for e, c in self.terms.items()})

    def rename(self, mapping):
        vars = tuple(mapping.get(v, v) for v in self.vars)
        return MultiPoly(self.field, vars, self.terms)

    def substitute(self, mapping):
        """
        Evaluate variables at polynomials

        Args:
            mapping: {variable name: MultiPoly | UniPoly | F_q int}

        Returns:
            MultiPoly
        """
        mapping = {v: MultiPoly.promote(val, self.field) for v, val in mapping.items() if v in self.vars}
        if not mapping:
            return self
        keep = [i for i, v in enumerate(self.vars) if v not in mapping]
        keep_vars = tuple(self.vars[i] for i in keep)
        slots = [(i, v) for i, v in enumerate(self.vars) if v in mapping]
        powers = {v: {0: MultiPoly.one(self.field)} for _, v in slots}

        def power_of(v, k):
            cache = powers[v]
            if k not in cache:
                cache[k] = mapping[v] ** k
            return cache[k]

        groups = {}
        for e, c in self.terms.items():
            groups.setdefault(tuple(e[i] for i, _ in slots), {})[tuple(e[i] for i in keep)] = c
        pieces = []
        for sub_exps, rest in groups.items():
            value = MultiPoly(self.field, keep_vars, rest)
            for (_, v), k in zip(slots, sub_exps):
                if k:
                    value = value * power_of(v, k)
            pieces.append(value)
        return MultiPoly.sum(pieces, self.field, keep_vars)

    # --- output ---

    def __repr__(self):
        return f"MultiPoly({self})"

    def __str__(self):
        items = sorted(self.terms.items(), reverse=True)
        return _format_terms(self.field, self.vars, items)

    def encode(self):
        compact = self.compact()
        return {
            "vars": list(compact.vars),
            "terms": [
                {"exps": list(e), "coeff": self.field.encode(c)}
                for e, c in sorted(compact.terms.items(), reverse=True)
            ],
        }


def _merge_vars(a, b):
    if a == b:
        return a
    return tuple(sorted(set(a) | set(b), key=var_key))


def _remap_terms(terms, src, dst):
    if src == dst:
        return terms
    # variables absent from dst must not occur
    index = [dst.index(v) if v in dst else None for v in src]
    width = len(dst)
    out = {}
    for e, c in terms.items():
        new = [0] * width
        for pos, x in zip(index, e):
            if pos is not None:
                new[pos] = x
            elif x:
                raise UnknownVariable(f"variables {[v for v, i in zip(src, index) if i is None]} not in {dst}")
        out[tuple(new)] = c
    return out


class FracPoly:
    """
    Element of K[vars]: a MultiPoly numerator over a monic UniPoly denominator

    Reduced so that the denominator shares no factor with the theta-content of
    the numerator; reduced forms are equal exactly when the values are.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, reduced=False):
        field = num.field
        if den is None:
            den = UniPoly.one(field)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if not reduced:
            if den.lead != 1:
                c = field.inv(den.lead)
                num, den = num.scale(c), den.scale(c)
            if num.is_zero():
                den = UniPoly.one(field)
            elif den.degree > 0:
                g = den.gcd(num.theta_content())
                if g.degree > 0:
                    num = num.map_theta_slices(lambda a: a.exact_div(g))
                    den = den.exact_div(g)
        self.num = num
        self.den = den

    @property
    def field(self):
        return self.num.field

    @classmethod
    def promote(cls, item, field):
        if isinstance(item, FracPoly):
            return item
        if isinstance(item, RatFunc):
            return item.to_frac()
        return cls(MultiPoly.promote(item, field), reduced=True)

    @classmethod
    def zero(cls, field):
        return cls(MultiPoly.zero(field), reduced=True)

    @classmethod
    def one(cls, field):
        return cls(MultiPoly.one(field), reduced=True)

    def is_zero(self):
        return self.num.is_zero()

    @property
    def integral(self):
        return self.den.is_one()

    def to_multi(self):
        if not self.integral:
            raise ArithmeticError(f"{self} is not integral")
        return self.num

    def __eq__(self, other):
        if isinstance(other, (MultiPoly, UniPoly, RatFunc, int)):
            other = FracPoly.promote(other, self.field)
        if not isinstance(other, FracPoly):
            return NotImplemented
        return self.den == other.den and self.num == other.num

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        return f"FracPoly({self})"

    def __str__(self):
        if self.den.is_one():
            return str(self.num)
        return f"({self.num}) / ({self.den})"

    def __add__(self, other):
        other = FracPoly.promote(other, self.field)
        if self.den == other.den:
            return FracPoly(self.num + other.num, self.den)
        g = self.den.gcd(other.den)
        a, b = self.den.exact_div(g), other.den.exact_div(g)
        return FracPoly(self.num * b + other.num * a, a * other.den)

    __radd__ = __add__

    def __neg__(self):
        return FracPoly(-self.num, self.den, reduced=True)

    def __sub__(self, other):
        return self + (-FracPoly.promote(other, self.field))

    def __mul__(self, other):
        other = FracPoly.promote(other, self.field)
        return FracPoly(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def twist(self, j=1):
        return FracPoly(self.num.twist(j), self.den.twist(j), reduced=True)

    def qpower(self, j=1):
        return FracPoly(self.num.qpower(j), self.den.twist(j), reduced=True)

    def map_num(self, fn):
        """Apply an A-linear map to the numerator"""
        return FracPoly(fn(self.num), self.den)

    def to_series(self, precision):
        from laurent import TateSeries, laurent_invert_monic

        num = TateSeries.from_multipoly(self.num)
        if self.den.is_one():
            return num.truncate(precision)
        top = num.top_exponent()
        if top is None:
            return TateSeries.zero(self.field, precision)
        inv = laurent_invert_monic(self.den, max(precision + top, 0))
        return (num * inv).truncate(precision)

    def encode(self):
        return {"num": self.num.encode(), "den": self.den.encode()}


def sum_fractions(field, pairs):
    """
    Exact sum of numerator / denominator pairs

    Args:
        field: FieldSpec
        pairs: iterable of (MultiPoly numerator, monic UniPoly denominator)

    Returns:
        Reduced FracPoly
    """
    pairs = list(pairs)
    common = UniPoly.one(field)
    for _, den in pairs:
        common = common.lcm(den)
    scaled = (num * common.exact_div(den).to_multi() for num, den in pairs)
    return FracPoly(MultiPoly.sum(scaled, field), common)


def substitute(a, target):
    """
    Coefficientwise substitution theta -> target

    Args:
        a: UniPoly
        target: variable name, or a MultiPoly such as theta^(q^j)

    Returns:
        MultiPoly a(target)
    """
    if isinstance(target, str):
        if not is_variable_name(target):
            raise UnknownVariable(f"unknown variable '{target}'")
        return a.to_multi(target)
    target = MultiPoly.promote(target, a.field)
    result = MultiPoly.zero(a.field)
    for c in reversed(a.coeffs):
        result = result * target + c
    return result
