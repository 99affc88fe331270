"""Linear elementary cellular automata (rules 102 and 60) and the CA model of
shrunken sequences.

Grids are dense ``uint8`` arrays with one row per time step; column c of a
rule-102 CA whose column 0 is ``s`` holds ``sum_{k subset of c} s_{i+k}``.
Columns ``t*d`` (``d = 2^(L1-1)``) repeat column 0 shifted by ``t*D`` with
``D = d * Z(1)``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from math import gcd

import numpy as np

from .errors import ColumnOutOfRange, DegenerateDifference, OverlapConflict
from .field import MINUS_INFINITY, FieldTables, ZechResolver
from .sequences import BinarySequence, _as_bits


class Rule(enum.Enum):
    RULE_102 = 102
    RULE_60 = 60


class Boundary(enum.Enum):
    PERIODIC = "periodic"
    NULL = "null"


@dataclass(frozen=True, eq=False)
class CellularAutomaton:
    state: np.ndarray
    rule: Rule = Rule.RULE_102
    boundary: Boundary = Boundary.PERIODIC

    def __post_init__(self):
        arr = np.array(_as_bits(self.state), dtype=np.uint8)
        arr.setflags(write=False)
        object.__setattr__(self, "state", arr)

    @property
    def length(self) -> int:
        return int(self.state.size)

    def __eq__(self, other):
        if not isinstance(other, CellularAutomaton):
            return NotImplemented
        return (
            self.rule == other.rule
            and self.boundary == other.boundary
            and np.array_equal(self.state, other.state)
        )

    def __str__(self):
        return "".join(map(str, self.state))


def _step_bits(x: np.ndarray, rule: Rule, boundary: Boundary) -> np.ndarray:
    if boundary is Boundary.PERIODIC:
        nb = np.roll(x, -1) if rule is Rule.RULE_102 else np.roll(x, 1)
    else:
        nb = np.zeros_like(x)
        if rule is Rule.RULE_102:
            nb[:-1] = x[1:]
        else:
            nb[1:] = x[:-1]
    return x ^ nb


def ca_step(ca: CellularAutomaton) -> CellularAutomaton:
    return CellularAutomaton(_step_bits(ca.state, ca.rule, ca.boundary), ca.rule, ca.boundary)


def ca_evolve(ca: CellularAutomaton, rows: int) -> np.ndarray:
    """Grid of ``rows`` generations; row 0 is the current state."""
    if rows < 1:
        raise ValueError("rows must be at least 1")
    grid = np.empty((rows, ca.length), dtype=np.uint8)
    x = ca.state.copy()
    for t in range(rows):
        grid[t] = x
        x = _step_bits(x, ca.rule, ca.boundary)
    return grid


def vertical_sequence(grid: np.ndarray, col: int) -> BinarySequence:
    if not 0 <= col < grid.shape[1]:
        raise ColumnOutOfRange(f"column {col} outside [0, {grid.shape[1] - 1}]")
    return BinarySequence(grid[:, col])


def ca_length_for_shrunken(T: int, L2: int, D_ca: int) -> int:
    """Length T / gcd(2^L2 - 1, Z(1)) of the rule-102 CA generating the sequence."""
    return T // gcd(2**L2 - 1, D_ca)


def shift_D(L1: int, zech1: int, T: int | None = None) -> int:
    """Row shift between repeated copies of the shrunken sequence in the CA."""
    D = 2 ** (L1 - 1) * zech1
    return D % T if T else D


def required_intercept_N(L1: int, L2: int, zech1: int) -> int:
    """Intercepted bits after which the replicated triangles overlap."""
    return 2 ** (L1 - 1) * (2**L2 - zech1)


def companion_column_closed_form(s: BinarySequence, j: int) -> BinarySequence:
    """Column 2^j of the CA: ``s_i + s_{i+2^j}``."""
    T = s.period
    if T is None:
        raise ValueError("sequence period must be known")
    v = s.bits[:T] if T <= len(s) else s.extended(T)
    return BinarySequence(v ^ np.roll(v, -(2**j)), T)


def seed_row(s: BinarySequence, length: int) -> np.ndarray:
    """Row 0 of the rule-102 CA whose column 0 is the periodic sequence ``s``."""
    T = s.period or len(s)
    col = np.array(s.extended(T), dtype=np.uint8)
    row = np.empty(length, dtype=np.uint8)
    for c in range(length):
        row[c] = col[0]
        col ^= np.roll(col, -1)
    return row


def shrunken_ca(s: BinarySequence, L1: int, L2: int, zech1: int) -> CellularAutomaton:
    """Periodic rule-102 CA whose column 0 is the shrunken sequence ``s``."""
    T = s.period or len(s)
    L = ca_length_for_shrunken(T, L2, zech1)
    return CellularAutomaton(seed_row(BinarySequence(s.extended(T), T), L))


@dataclass(frozen=True)
class CompanionOffsets:
    """Start offsets in the first interleaved m-sequence of every interleaved
    subsequence of CA column ``column``."""

    column: int
    offsets: tuple
    modulus: int

    def __post_init__(self):
        object.__setattr__(
            self,
            "offsets",
            tuple(x if x is MINUS_INFINITY else int(x) % self.modulus for x in self.offsets),
        )


def _plus(res, x, y):
    if x is MINUS_INFINITY or y is MINUS_INFINITY:
        raise DegenerateDifference("offset of the zero sequence")
    if (x - y) % res.tables.order == 0:
        raise DegenerateDifference(f"offsets {x} and {y} coincide")
    return res.add(x, y)


def companion_offsets_step(
    prev: CompanionOffsets, tables: FieldTables, resolver: ZechResolver | None = None
) -> CompanionOffsets:
    """Offsets of column j from those of column j-1.

    Subsequence k of column j is the sum of subsequences k and k+1 of column
    j-1; the last one pairs with subsequence 0 advanced by one step.
    """
    res = resolver or ZechResolver(tables)
    q1 = tables.order
    d = prev.offsets
    n = len(d)
    out = []
    for k in range(n - 1):
        out.append(_plus(res, d[k], d[k + 1]))
    out.append(_plus(res, d[n - 1], (d[0] + 1) % q1))
    return CompanionOffsets(prev.column + 1, tuple(out), q1)


def companion_offsets_shortcut(base: CompanionOffsets, t: int, D: int, T2: int) -> CompanionOffsets:
    """Offsets of column ``t*d + m`` from column m: add ``t*D`` to each."""
    d = len(base.offsets)
    return CompanionOffsets(
        base.column + t * d,
        tuple(x if x is MINUS_INFINITY else (x + t * D) % T2 for x in base.offsets),
        T2,
    )


def xor_step_positions(positions, add) -> list:
    """Positions of ``{w_k + w_{k+1}}`` given positions of a window ``w``.

    ``add`` combines two exponents (e.g. :meth:`ZechResolver.add`).
    """
    return [add(positions[k], positions[k + 1]) for k in range(len(positions) - 1)]


@dataclass(frozen=True, eq=False)
class TriangleRecovery:
    triangle_cells: int
    covered: np.ndarray  # grid cells reached by the replicated prefix triangles
    known: np.ndarray  # column-0 bits recovered after closing the overlaps
    full: bool
    ca_contents: np.ndarray | None
    sequence: BinarySequence | None

    @property
    def cells_recovered(self) -> int:
        return int(self.covered.sum())


def _subset_xor(vals: np.ndarray, base: int, c: int, T: int) -> int:
    # column c at row `base` of the rule-102 CA: XOR over k with k & c == k
    acc = 0
    k = c
    while True:
        acc ^= int(vals[(base + k) % T])
        if k == 0:
            break
        k = (k - 1) & c
    return acc


def triangle_recover(prefix, L1: int, L2: int, zech1: int) -> TriangleRecovery:
    """Rebuild as much of the shrunken-sequence CA as the first n bits allow.

    The n known column-0 bits give an n(n+1)/2-cell triangle. Column ``t*d``
    equals column 0 shifted by ``t*D``, so each triangle copy t lands at columns
    ``t*d ..`` and ``t*D`` rows earlier; its bits in column ``t*d`` are new
    column-0 bits. New runs of known bits seed further copies until nothing
    changes. With n >= N the copies overlap all the way round.
    """
    bits = _as_bits(prefix)
    n = int(bits.size)
    d = 2 ** (L1 - 1)
    T2 = 2**L2 - 1
    T = d * T2
    Dsh = shift_D(L1, zech1, T)
    L = ca_length_for_shrunken(T, L2, zech1)

    covered = np.zeros((T, L), dtype=bool)
    for t in range(L // d):
        for c in range(min(n, L)):
            rows = n - c
            col = (c + d * t) % L
            r = (np.arange(rows) - t * Dsh) % T
            covered[r, col] = True

    vals = np.zeros(T, dtype=np.uint8)
    known = np.zeros(T, dtype=bool)
    m = min(n, T)
    vals[:m] = bits[:m]
    known[:m] = True
    if n > T and not np.array_equal(bits[T:], np.resize(bits[:T], n - T)):
        raise OverlapConflict("prefix is not periodic with the shrunken period")

    changed = True
    while changed and not known.all():
        changed = False
        starts = [i for i in range(T) if known[i] and not known[i - 1]]
        for p in starts:
            run = 0
            while run < T and known[(p + run) % T]:
                run += 1
            t = 1
            while d * t <= run - 1:
                for r in range(run - d * t):
                    idx = (p + r + t * Dsh) % T
                    v = _subset_xor(vals, p + r, d * t, T)
                    if known[idx]:
                        if vals[idx] != v:
                            raise OverlapConflict(f"column-0 bit {idx} recovered as both values")
                    else:
                        vals[idx] = v
                        known[idx] = True
                        changed = True
                t += 1

    full = bool(known.all())
    grid = seq = None
    if full:
        seq = BinarySequence(vals, T)
        grid = ca_evolve(shrunken_ca(seq, L1, L2, zech1), T)
        covered = np.ones_like(covered)
    return TriangleRecovery(n * (n + 1) // 2, covered, known, full, grid, seq)


def grid_to_text(grid: np.ndarray) -> str:
    return "".join("".join("1" if b else "0" for b in row) + "\n" for row in grid)


def grid_to_pbm(grid: np.ndarray) -> str:
    h, w = grid.shape
    lines = ["P1", f"{w} {h}"]
    lines += [" ".join("1" if b else "0" for b in row) for row in grid]
    return "\n".join(lines) + "\n"
