#!/usr/bin/env python3
"""
Expression Parser and Canonical Encodings
Reads CLI polynomial expressions and writes the canonical JSON forms
"""

import json
import re
from fractions import Fraction

from ffl_errors import ParseError, UnknownVariable
from laurent import TateSeries
from polynomials import FracPoly, MultiPoly, RatFunc, UniPoly, is_variable_name

TOKEN_PATTERN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*^(),\[\]]))")


def tokenize(text):
    """Split an expression into (kind, value) tokens"""
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        match = TOKEN_PATTERN.match(text, pos)
        if not match or match.end() == pos:
            raise ParseError(f"unexpected character {text[pos:].strip()[:1]!r} at position {pos}")
        number, name, op = match.groups()
        if number is not None:
            tokens.append(("int", int(number)))
        elif name is not None:
            tokens.append(("name", name))
        else:
            tokens.append(("op", "^" if op == "**" else op))
        pos = match.end()
    return tokens


class ExpressionParser:
    """
    Recursive-descent parser for

        expr   := term (('+' | '-') term)*
        term   := power ('*' power)*
        power  := unary ('^' integer)?
        unary  := '-' unary | atom
        atom   := integer | symbol | '(' expr ')'

    Symbols: theta, u (the generator of F_q), z, z1.., t, X, X1.., x.
    Integers are read in the prime field.
    """

    def __init__(self, field, text):
        self.field = field
        self.text = text
        self.tokens = tokenize(text)
        self.pos = 0

    def parse(self):
        if not self.tokens:
            raise ParseError("empty expression")
        value = self._expr()
        if self.pos != len(self.tokens):
            raise ParseError(f"trailing input after position {self.pos} in {self.text!r}")
        return value

    def _peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else (None, None)

    def _take(self, value=None):
        kind, tok = self._peek()
        if kind is None:
            raise ParseError(f"unexpected end of {self.text!r}")
        if value is not None and tok != value:
            raise ParseError(f"expected {value!r}, found {tok!r} in {self.text!r}")
        self.pos += 1
        return kind, tok

    def _expr(self):
        value = self._term()
        while self._peek()[1] in ("+", "-") and self._peek()[0] == "op":
            _, op = self._take()
            rhs = self._term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def _term(self):
        value = self._unary()
        while self._peek() == ("op", "*"):
            self._take()
            value = value * self._unary()
        return value

    def _unary(self):
        if self._peek() == ("op", "-"):
            self._take()
            return -self._unary()
        return self._power()

    def _power(self):
        base = self._atom()
        if self._peek() == ("op", "^"):
            self._take()
            kind, exponent = self._take()
            if kind != "int":
                raise ParseError(f"exponent must be a non-negative integer in {self.text!r}")
            return base ** exponent
        return base

    def _atom(self):
        kind, tok = self._take()
        field = self.field
        if kind == "int":
            return MultiPoly.constant(field, field.from_int(tok))
        if kind == "name":
            if tok == "u":
                return MultiPoly.constant(field, field.generator())
            if not is_variable_name(tok):
                raise ParseError(f"unknown symbol {tok!r} in {self.text!r}")
            return MultiPoly.variable(field, tok)
        if tok == "(":
            value = self._expr()
            self._take(")")
            return value
        raise ParseError(f"unexpected {tok!r} in {self.text!r}")


def parse_expression(text, field):
    """Parse an expression into a MultiPoly over field"""
    return ExpressionParser(field, text).parse().compact()


def parse_poly(text, field):
    """Parse an element of A = F_q[theta]"""
    value = parse_expression(text, field)
    try:
        return value.to_unipoly()
    except UnknownVariable as e:
        raise ParseError(f"{text!r} must be a polynomial in theta alone ({e.message})") from e


def split_list(text):
    """Split '[a, b, (c, d)]' at top-level commas"""
    body = text.strip()
    if not (body.startswith("[") and body.endswith("]")):
        raise ParseError(f"expected a bracketed list, got {text!r}")
    body = body[1:-1]
    items, depth, start = [], 0, 0
    for i, ch in enumerate(body):
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
            if depth < 0:
                raise ParseError(f"unbalanced brackets in {text!r}")
        elif ch == "," and depth == 0:
            items.append(body[start:i])
            start = i + 1
    if depth:
        raise ParseError(f"unbalanced brackets in {text!r}")
    items.append(body[start:])
    items = [item.strip() for item in items]
    if items == [""]:
        return []
    if any(not item for item in items):
        raise ParseError(f"empty list entry in {text!r}")
    return items


def parse_phi(text, field):
    """
    Parse a Drinfeld module spec '[phi_1, ..., phi_r]'

    Returns:
        list of UniPoly (phi_{theta,0} = theta is implied)
    """
    items = split_list(text)
    if not items:
        raise ParseError("phi needs at least one coefficient")
    return [parse_poly(item, field) for item in items]


def parse_modulus(text):
    """Parse ascending F_p digits '1,1,1' or '[1,1,1]'"""
    body = text.strip()
    if not body.startswith("["):
        body = f"[{body}]"
    try:
        return tuple(int(item) for item in split_list(body))
    except ValueError as e:
        raise ParseError(f"modulus digits must be integers: {text!r}") from e


def parse_rational(text):
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as e:
        raise ParseError(f"not a rational number: {text!r}") from e


# --- canonical encodings ---

def encode_fq(field, a):
    return field.encode(a)


def encode_unipoly(a):
    return a.encode()


def encode_multipoly(a):
    return a.encode()


def encode_series(s):
    return s.encode()


def encode_value(value):
    """Recursively encode library values into JSON-ready data"""
    if isinstance(value, (UniPoly, MultiPoly, FracPoly, RatFunc, TateSeries)):
        return value.encode()
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, dict):
        return {str(k): encode_value(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [encode_value(v) for v in value]
    if hasattr(value, "encode") and not isinstance(value, str):
        return value.encode()
    return value


def to_json(value):
    """Deterministic JSON text"""
    return json.dumps(encode_value(value), indent=2, ensure_ascii=False)
