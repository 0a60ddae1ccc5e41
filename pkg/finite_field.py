#!/usr/bin/env python3
"""
Finite Field Arithmetic (F_q, q = p^l)
Elements are integers 0..q-1 whose base-p digits are power-basis coordinates in u
"""

from functools import lru_cache

import numpy as np

from ffl_errors import NonPrimeP, ReducibleModulus, NoDefaultModulus, UsageError

# Irreducible moduli over F_p, ascending digits, monic (p^l <= 64)
DEFAULT_MODULI = {
    (2, 2): (1, 1, 1),
    (2, 3): (1, 1, 0, 1),
    (2, 4): (1, 1, 0, 0, 1),
    (2, 5): (1, 0, 1, 0, 0, 1),
    (2, 6): (1, 1, 0, 0, 0, 0, 1),
    (3, 2): (1, 0, 1),
    (3, 3): (1, 2, 0, 1),
    (5, 2): (2, 0, 1),
    (7, 2): (1, 0, 1),
}

# Lookup tables are square in q; beyond this the tables stop being cheap
MAX_TABLE_ORDER = 1024


def is_prime(n):
    """Trial division primality test (small p only)"""
    if n < 2:
        return False
    k = 2
    while k * k <= n:
        if n % k == 0:
            return False
        k += 1
    return True


# --- polynomials over F_p as digit lists, used only to validate moduli ---

def _fp_trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _fp_divmod(a, b, p):
    a = _fp_trim(a)
    b = _fp_trim(b)
    inv = pow(b[-1], p - 2, p)
    quot = [0] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b):
        c = (a[-1] * inv) % p
        shift = len(a) - len(b)
        quot[shift] = c
        for i, bi in enumerate(b):
            a[shift + i] = (a[shift + i] - c * bi) % p
        a = _fp_trim(a)
    return quot, a


def _fp_mulmod(a, b, m, p):
    prod = [0] * (len(a) + len(b))
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] = (prod[i + j] + ai * bj) % p
    return _fp_divmod(prod, m, p)[1]


def _fp_gcd(a, b, p):
    a, b = _fp_trim(a), _fp_trim(b)
    while b:
        a, b = b, _fp_divmod(a, b, p)[1]
    return a


def _fp_is_irreducible(m, p):
    """Ben-Or: gcd(u^(p^i) - u, m) = 1 for every i <= deg(m)/2"""
    deg = len(m) - 1
    b = [0, 1]
    for _ in range(deg // 2):
        # b <- b^p mod m
        acc = [1]
        for _ in range(p):
            acc = _fp_mulmod(acc, b, m, p)
        b = acc
        diff = list(b) + [0] * max(0, 2 - len(b))
        diff[1] = (diff[1] - 1) % p
        if len(_fp_gcd(m, diff, p)) != 1:
            return False
    return True


class FieldSpec:
    """
    The finite field F_q = F_p[u]/(modulus)

    Elements are plain ints; digit i of the base-p expansion is the
    coefficient of u^i. Arithmetic goes through precomputed tables.
    """

    def __init__(self, p, l, modulus):
        self.p = p
        self.l = l
        self.modulus = tuple(modulus)
        self.q = p ** l
        self._build_tables()

    def _build_tables(self):
        p, l, q = self.p, self.l, self.q
        weights = p ** np.arange(l)
        digits = (np.arange(q)[:, None] // weights[None, :]) % p

        add = ((digits[:, None, :] + digits[None, :, :]) % p) @ weights
        neg = ((-digits) % p) @ weights

        # u^k reduced mod the modulus, for k < 2l - 1
        reduce_rows = np.zeros((2 * l - 1, l), dtype=np.int64)
        power = np.zeros(l, dtype=np.int64)
        power[0] = 1
        tail = -np.array(self.modulus[:l], dtype=np.int64) % p
        for k in range(2 * l - 1):
            reduce_rows[k] = power
            top = power[l - 1]
            power = np.concatenate(([0], power[:-1]))
            power = (power + top * tail) % p
        conv = np.zeros((q, q, 2 * l - 1), dtype=np.int64)
        for i in range(l):
            for j in range(l):
                conv[:, :, i + j] += np.multiply.outer(digits[:, i], digits[:, j])
        mul = ((conv @ reduce_rows) % p) @ weights

        ones = mul == 1
        inv = np.where(ones.any(axis=1), ones.argmax(axis=1), 0)

        self._digits = digits
        self._add = add.tolist()
        self._mul = mul.tolist()
        self._neg = neg.tolist()
        self._inv = inv.tolist()

    def __eq__(self, other):
        return isinstance(other, FieldSpec) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"FieldSpec(p={self.p}, l={self.l}, modulus={list(self.modulus)})"

    def key(self):
        return (self.p, self.l, self.modulus)

    # --- element arithmetic ---

    def add(self, a, b):
        return self._add[a][b]

    def sub(self, a, b):
        return self._add[a][self._neg[b]]

    def neg(self, a):
        return self._neg[a]

    def mul(self, a, b):
        return self._mul[a][b]

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("0 has no inverse in F_q")
        return self._inv[a]

    def div(self, a, b):
        return self._mul[a][self.inv(b)]

    def power(self, a, e):
        if e < 0:
            a, e = self.inv(a), -e
        result = 1
        while e:
            if e & 1:
                result = self._mul[result][a]
            a = self._mul[a][a]
            e >>= 1
        return result

    def frobenius(self, a):
        """x -> x^p"""
        return self.power(a, self.p)

    def from_int(self, n):
        """Image of the integer n in the prime field F_p"""
        return n % self.p

    def coerce(self, c):
        """An int in [0, q) is an element encoding; any other int is read as n * 1"""
        return c if 0 <= c < self.q else self.from_int(c)

    def generator(self):
        """The class of u"""
        if self.l == 1:
            return (-self.modulus[0]) % self.p
        return self.p

    def digits(self, a):
        return [int(d) for d in self._digits[a]]

    def from_digits(self, digits):
        digits = list(digits)
        if len(digits) != self.l or any(not 0 <= d < self.p for d in digits):
            raise UsageError(f"expected {self.l} digits in [0, {self.p - 1}], got {digits}")
        return sum(d * self.p ** i for i, d in enumerate(digits))

    def elements(self):
        return range(self.q)

    def nonzero(self):
        return range(1, self.q)

    def encode(self, a):
        """Canonical textual form: bare integer when l = 1, else digit list"""
        if self.l == 1:
            return a
        return self.digits(a)

    def decode(self, value):
        if isinstance(value, int):
            return self.from_int(value)
        return self.from_digits(value)


@lru_cache(maxsize=None)
def _cached_field(p, l, modulus):
    return FieldSpec(p, l, modulus)


def fq_make(p, l=1, modulus=None):
    """
    Build and validate F_q

    Args:
        p: characteristic (prime)
        l: extension degree, q = p^l
        modulus: optional ascending F_p digits of a monic irreducible of degree l

    Returns:
        FieldSpec
    """
    if not is_prime(p):
        raise NonPrimeP(f"p = {p} is not prime")
    if l < 1:
        raise UsageError(f"l must be a positive integer, got {l}")
    if modulus is None:
        if l == 1:
            modulus = (0, 1)
        elif (p, l) in DEFAULT_MODULI:
            modulus = DEFAULT_MODULI[(p, l)]
        else:
            raise NoDefaultModulus(f"no built-in modulus for p = {p}, l = {l}; pass one explicitly")
    modulus = tuple(int(d) % p for d in modulus)
    if len(modulus) != l + 1 or modulus[-1] != 1:
        raise ReducibleModulus(f"modulus {list(modulus)} is not monic of degree {l}")
    if l > 1 and not _fp_is_irreducible(list(modulus), p):
        raise ReducibleModulus(f"modulus {list(modulus)} is reducible over F_{p}")
    if p ** l > MAX_TABLE_ORDER:
        raise UsageError(f"q = {p ** l} is beyond desk scale (max {MAX_TABLE_ORDER})")
    return _cached_field(p, l, modulus)


if __name__ == "__main__":
    for key in sorted(DEFAULT_MODULI):
        field = fq_make(*key)
        print(f"✓ F_{field.q}: modulus {list(field.modulus)}")
