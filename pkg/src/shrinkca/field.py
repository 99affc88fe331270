"""Arithmetic in GF(2^L): exponent tables, Zech logarithms, cyclotomic cosets.

Elements are integers whose bit i is the coefficient of alpha^i, the same
encoding used for polynomials and LFSR states elsewhere in the package.
Exponents are canonical residues in ``[0, q-2]``; the zero element has the
exponent :data:`MINUS_INFINITY`.
"""

from __future__ import annotations

import io
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import gf2poly
from .errors import DegreeOutOfRange, ExponentOutOfRange, NonPrimitivePolynomial
from .gf2poly import BinaryPolynomial, PrimitivePolynomial

MAX_DEGREE = 20

# array marker for the zero element's exponent inside the numpy tables
_NEG = -1


class _MinusInfinity:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "MINUS_INFINITY"

    def __str__(self):
        return "-inf"

    def __reduce__(self):
        return (_MinusInfinity, ())


MINUS_INFINITY = _MinusInfinity()


def _check_degree(L: int) -> None:
    if not 2 <= L <= MAX_DEGREE:
        raise DegreeOutOfRange(f"degree {L} outside [2, {MAX_DEGREE}]")


@dataclass(frozen=True, eq=False)
class FieldTables:
    poly: BinaryPolynomial
    order: int  # q - 1
    antilog: np.ndarray  # exponent -> element
    log: np.ndarray  # element -> exponent, log[0] = -1
    zech: np.ndarray  # exponent -> exponent, zech[0] = -1

    @property
    def degree(self) -> int:
        return self.poly.degree

    def element(self, t) -> int:
        if t is MINUS_INFINITY:
            return 0
        return int(self.antilog[t % self.order])

    def exponent(self, element: int):
        if element == 0:
            return MINUS_INFINITY
        return int(self.log[element])

    def __repr__(self):
        return f"FieldTables(poly={self.poly}, order={self.order})"


@lru_cache(maxsize=64)
def _build(mask: int) -> FieldTables:
    L = gf2poly.degree(mask)
    _check_degree(L)
    if not mask & 1:
        raise NonPrimitivePolynomial(f"{gf2poly.format_poly(mask)} has zero constant term")
    q1 = (1 << L) - 1
    antilog = np.empty(q1, dtype=np.int64)
    x = 1
    top = 1 << L
    for t in range(q1):
        if t and x == 1:
            raise NonPrimitivePolynomial(
                f"orbit of x closes after {t} steps for {gf2poly.format_poly(mask)}"
            )
        antilog[t] = x
        x <<= 1
        if x & top:
            x ^= mask
    if x != 1:
        raise NonPrimitivePolynomial(f"{gf2poly.format_poly(mask)} is not primitive")
    log = np.full(q1 + 1, _NEG, dtype=np.int64)
    log[antilog] = np.arange(q1)
    zech = np.empty(q1, dtype=np.int64)
    zech[0] = _NEG
    zech[1:] = log[antilog[1:] ^ 1]
    for arr in (antilog, log, zech):
        arr.setflags(write=False)
    return FieldTables(PrimitivePolynomial(mask), q1, antilog, log, zech)


def build_field(poly) -> FieldTables:
    """Eagerly tabulate GF(2^L) for a primitive polynomial of degree 2..20."""
    return _build(gf2poly.as_mask(poly))


def _check_exponent(tables: FieldTables, t) -> int:
    if isinstance(t, (bool, np.bool_)) or not isinstance(t, (int, np.integer)):
        raise ExponentOutOfRange(f"exponent {t!r} is not an integer")
    if not 0 <= t < tables.order:
        raise ExponentOutOfRange(f"exponent {t} outside [0, {tables.order - 1}]")
    return int(t)


def zech(tables: FieldTables, t):
    """The m with 1 + alpha^t = alpha^m."""
    if t is MINUS_INFINITY:
        return 0
    t = _check_exponent(tables, t)
    if t == 0:
        return MINUS_INFINITY
    return int(tables.zech[t])


def add_exponents(tables: FieldTables, x, y):
    """Exponent of alpha^x + alpha^y, computed as Z(x - y) + y."""
    if x is MINUS_INFINITY:
        return y
    if y is MINUS_INFINITY:
        return x
    q1 = tables.order
    diff = (x - y) % q1
    if diff == 0:
        return MINUS_INFINITY
    return (int(tables.zech[diff]) + y) % q1


def zech_table_csv(tables: FieldTables) -> str:
    out = io.StringIO()
    out.write("x,zech_x\n")
    for t in range(tables.order):
        z = zech(tables, t)
        out.write(f"{t},{z}\n")
    return out.getvalue()


class ZechResolver:
    """Zech lookups that derive values from identities before touching the table.

    Each genuine table read seeds the cached orbit of four cosets: the coset of
    ``t`` (doubling), of ``Z(t)`` (involution), of ``-t`` (complement map) and of
    ``Z(t) - t``. ``table_lookups`` counts reads, ``derived`` counts requests
    answered from the cache.
    """

    def __init__(self, tables: FieldTables):
        self.tables = tables
        self._known: dict[int, int] = {}
        self.table_lookups = 0
        self.derived = 0
        self.seeds: list[int] = []

    @property
    def total(self) -> int:
        return self.table_lookups + self.derived

    def _seed(self, x: int, zx: int) -> None:
        q1 = self.tables.order
        for _ in range(self.tables.degree):
            if x in self._known:
                break
            self._known[x] = zx
            x = 2 * x % q1
            zx = 2 * zx % q1

    def __call__(self, t):
        if t is MINUS_INFINITY:
            return 0
        if t == 0:
            return MINUS_INFINITY
        hit = self._known.get(t)
        if hit is not None:
            self.derived += 1
            return hit
        self.table_lookups += 1
        self.seeds.append(t)
        q1 = self.tables.order
        m = int(self.tables.zech[t])
        self._seed(t, m)
        self._seed(m, t)
        self._seed((q1 - t) % q1, (m - t) % q1)
        self._seed((m - t) % q1, (q1 - t) % q1)
        return m

    def add(self, x, y):
        if x is MINUS_INFINITY:
            return y
        if y is MINUS_INFINITY:
            return x
        q1 = self.tables.order
        diff = (x - y) % q1
        if diff == 0:
            return MINUS_INFINITY
        return (self(diff) + y) % q1


@dataclass(frozen=True)
class Coset:
    leader: int
    members: tuple[int, ...]

    def __len__(self):
        return len(self.members)

    def __contains__(self, x):
        return x in self.members


@dataclass(frozen=True)
class CosetPartition:
    modulus: int
    cosets: tuple[Coset, ...]
    _index: dict = field(default=None, repr=False, compare=False)

    def coset_of(self, x: int) -> Coset:
        return self.cosets[self._index[x % self.modulus]]

    def leaders(self) -> list[int]:
        return [c.leader for c in self.cosets]


def coset(x: int, L: int) -> tuple[int, ...]:
    q1 = (1 << L) - 1
    x %= q1
    orbit = []
    while x not in orbit:
        orbit.append(x)
        x = 2 * x % q1
    return tuple(sorted(orbit))


@lru_cache(maxsize=32)
def cyclotomic_cosets(L: int) -> CosetPartition:
    _check_degree(L)
    q1 = (1 << L) - 1
    seen = bytearray(q1)
    cosets = []
    index = {}
    for s in range(q1):
        if seen[s]:
            continue
        members = coset(s, L)
        for m in members:
            seen[m] = 1
            index[m] = len(cosets)
        cosets.append(Coset(s, members))
    return CosetPartition(q1, tuple(cosets), index)


@dataclass(frozen=True)
class Violation:
    identity: str
    x: int
    expected: object
    got: object


def zech_properties_check(tables: FieldTables) -> list[Violation]:
    """Check the Zech definition and its standard identities on every exponent."""
    q1 = tables.order
    Z = np.asarray(tables.zech)
    A = np.asarray(tables.antilog)
    out: list[Violation] = []

    def report(name, xs, expected, got):
        for x, e, g in zip(xs, expected, got):
            out.append(Violation(name, int(x), int(e), int(g)))

    if Z[0] != _NEG:
        out.append(Violation("zech(0) = -inf", 0, MINUS_INFINITY, int(Z[0])))
    x = np.arange(1, q1)
    zx = Z[1:]
    valid = (zx >= 1) & (zx < q1)
    bad = ~valid
    report("zech(t) in [1, q-2]", x[bad], np.zeros(bad.sum()), zx[bad])
    x, zx = x[valid], zx[valid]

    lhs = A[zx]
    rhs = A[x] ^ 1
    bad = lhs != rhs
    report("1 + a^t = a^zech(t)", x[bad], rhs[bad], lhs[bad])

    got = Z[zx]
    bad = got != x
    report("zech(zech(t)) = t", x[bad], x[bad], got[bad])

    got = Z[2 * x % q1]
    exp = 2 * zx % q1
    bad = got != exp
    report("zech(2t) = 2 zech(t)", x[bad], exp[bad], got[bad])

    got = Z[q1 - x]
    exp = (zx - x) % q1
    bad = got != exp
    report("zech(q-1-t) = zech(t) - t", x[bad], exp[bad], got[bad])

    arg = (zx - x) % q1
    got = np.where(arg > 0, Z[arg], _NEG)
    exp = q1 - x
    bad = got != exp
    report("zech^-1(zech(t) - t) = q-1-t", x[bad], exp[bad], got[bad])
    return out


def gf_mul(tables: FieldTables, a: int, b: int) -> int:
    if a == 0 or b == 0:
        return 0
    return int(tables.antilog[(tables.log[a] + tables.log[b]) % tables.order])


def minimal_polynomial(tables: FieldTables, e: int) -> BinaryPolynomial:
    """Product of (x + alpha^j) over the cyclotomic coset of ``e``."""
    e = _check_exponent(tables, e)
    coeffs = [1]  # field elements, low degree first
    for j in coset(e, tables.degree):
        root = int(tables.antilog[j])
        nxt = [0] * (len(coeffs) + 1)
        for i, c in enumerate(coeffs):
            nxt[i + 1] ^= c
            nxt[i] ^= gf_mul(tables, c, root)
        coeffs = nxt
    if any(c not in (0, 1) for c in coeffs):
        raise ArithmeticError("minimal polynomial has coefficients outside GF(2)")
    mask = sum(c << i for i, c in enumerate(coeffs))
    if gf2poly.is_primitive(mask):
        return PrimitivePolynomial(mask)
    return BinaryPolynomial(mask)
