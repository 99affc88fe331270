"""Binary polynomials stored as integer bit masks (bit i = coefficient of x^i).

Text forms accepted by :func:`parse_poly`:

* algebraic, terms in any order: ``"1+x^2+x^5"``, ``"x^5 + x^2 + 1"``, ``"x^{10}+x^3+1"``
* little-endian coefficient string: ``"101001"`` (= 1 + x^2 + x^5)
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache

from sympy import factorint

from .errors import NonPrimitivePolynomial, PolynomialFormatError

_TERM = re.compile(r"^(?:1|x(?:\^\{?(\d+)\}?)?)$")


def degree(mask: int) -> int:
    return mask.bit_length() - 1


def mul(a: int, b: int) -> int:
    """Carry-less product."""
    r = 0
    while b:
        if b & 1:
            r ^= a
        a <<= 1
        b >>= 1
    return r


def mod(a: int, m: int) -> int:
    dm = degree(m)
    if dm < 0:
        raise ZeroDivisionError("polynomial modulus is zero")
    while a and degree(a) >= dm:
        a ^= m << (degree(a) - dm)
    return a


def mulmod(a: int, b: int, m: int) -> int:
    dm = degree(m)
    r = 0
    a = mod(a, m)
    while b:
        if b & 1:
            r ^= a
        b >>= 1
        a <<= 1
        if (a >> dm) & 1:
            a ^= m
    return r


def powmod(base: int, e: int, m: int) -> int:
    r = 1
    base = mod(base, m)
    while e:
        if e & 1:
            r = mulmod(r, base, m)
        base = mulmod(base, base, m)
        e >>= 1
    return mod(r, m)


def reciprocal(mask: int) -> int:
    """x^deg * p(1/x)."""
    d = degree(mask)
    return sum(1 << (d - i) for i in range(d + 1) if (mask >> i) & 1)


@lru_cache(maxsize=None)
def _prime_factors(n: int) -> tuple[int, ...]:
    return tuple(sorted(factorint(n)))


def is_primitive(mask: int) -> bool:
    """True iff x generates the whole multiplicative group modulo ``mask``."""
    L = degree(mask)
    if L < 1 or not mask & 1:
        return False
    order = (1 << L) - 1
    if L == 1:
        return mask == 0b11
    if powmod(0b10, order, mask) != 1:
        return False
    return all(powmod(0b10, order // r, mask) != 1 for r in _prime_factors(order))


def primitive_polynomials(L: int) -> list[int]:
    """All primitive polynomials of degree L, ascending by mask."""
    return [m for m in range((1 << L) | 1, 1 << (L + 1), 2) if is_primitive(m)]


def parse_poly(text: str) -> int:
    s = "".join(text.split())
    if not s:
        raise PolynomialFormatError("empty polynomial")
    if set(s) <= {"0", "1"} and (len(s) > 1 or s == "0"):
        return sum(1 << i for i, ch in enumerate(s) if ch == "1")
    mask = 0
    for term in s.split("+"):
        m = _TERM.match(term)
        if m is None:
            raise PolynomialFormatError(f"cannot parse term {term!r} in {text!r}")
        if term == "1":
            e = 0
        elif m.group(1) is None:
            e = 1
        else:
            e = int(m.group(1))
        mask ^= 1 << e
    return mask


def format_poly(mask: int) -> str:
    if mask == 0:
        return "0"
    terms = []
    for i in range(degree(mask) + 1):
        if (mask >> i) & 1:
            terms.append("1" if i == 0 else "x" if i == 1 else f"x^{i}")
    return "+".join(terms)


@dataclass(frozen=True)
class BinaryPolynomial:
    mask: int

    @classmethod
    def parse(cls, text: str):
        return cls(parse_poly(text))

    @classmethod
    def from_exponents(cls, exponents):
        mask = 0
        for e in exponents:
            mask ^= 1 << e
        return cls(mask)

    @property
    def degree(self) -> int:
        return degree(self.mask)

    @property
    def coefficients(self) -> tuple[int, ...]:
        return tuple((self.mask >> i) & 1 for i in range(self.degree + 1))

    def is_primitive(self) -> bool:
        return is_primitive(self.mask)

    def reciprocal(self) -> BinaryPolynomial:
        return BinaryPolynomial(reciprocal(self.mask))

    def __mul__(self, other):
        if not isinstance(other, BinaryPolynomial):
            return NotImplemented
        return BinaryPolynomial(mul(self.mask, other.mask))

    def __pow__(self, e: int):
        r = 1
        for _ in range(e):
            r = mul(r, self.mask)
        return BinaryPolynomial(r)

    def __eq__(self, other):
        if isinstance(other, BinaryPolynomial):
            return self.mask == other.mask
        return NotImplemented

    def __hash__(self):
        return hash(self.mask)

    def __str__(self):
        return format_poly(self.mask)

    def __repr__(self):
        return f"{type(self).__name__}({format_poly(self.mask)!r})"


@dataclass(frozen=True, eq=False)
class PrimitivePolynomial(BinaryPolynomial):
    """A binary polynomial validated as primitive on construction."""

    def __post_init__(self):
        if not self.mask & 1 or self.degree < 1:
            raise NonPrimitivePolynomial(f"{format_poly(self.mask)} must be monic with constant term 1")
        if not is_primitive(self.mask):
            raise NonPrimitivePolynomial(f"{format_poly(self.mask)} is not primitive")


def as_mask(poly) -> int:
    if isinstance(poly, BinaryPolynomial):
        return poly.mask
    if isinstance(poly, str):
        return parse_poly(poly)
    return int(poly)
