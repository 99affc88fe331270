"""The shrinking generator and the structure of its output.

A shrunken sequence with registers of lengths L1 (selector) and L2 (data) is
the interleaving of ``d = 2^(L1-1)`` cyclic shifts of one m-sequence ``v`` of
period ``T2 = 2^L2 - 1``. Subsequence k starts at ``v[d_k]``, with
``d_k = delta * i_k mod T2`` where ``i_k`` is the index of the k-th one of the
selector sequence and ``delta = T1^-1 mod T2``.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

import numpy as np

from .errors import InconsistentOffsets, InvalidConfig, NotAnMSequence, NotDecomposable
from .field import build_field, minimal_polynomial
from .gf2poly import BinaryPolynomial, as_mask, is_primitive
from .sequences import (
    BinarySequence,
    LfsrConfig,
    berlekamp_massey,
    decimate,
    find_period,
    lfsr_generate,
    recurrence_extend,
)


@dataclass(frozen=True)
class ShrinkingGeneratorConfig:
    r1: LfsrConfig  # selector
    r2: LfsrConfig  # data

    def __post_init__(self):
        L1, L2 = self.r1.length, self.r2.length
        if gcd(L1, L2) != 1:
            raise InvalidConfig(f"register lengths {L1} and {L2} are not coprime")
        for name, r in (("r1", self.r1), ("r2", self.r2)):
            if not is_primitive(r.poly.mask):
                raise InvalidConfig(f"{name} polynomial {r.poly} is not primitive")

    @classmethod
    def from_text(cls, p1, init1, p2, init2):
        return cls(
            LfsrConfig(BinaryPolynomial(as_mask(p1)), init1),
            LfsrConfig(BinaryPolynomial(as_mask(p2)), init2),
        )

    @property
    def L1(self) -> int:
        return self.r1.length

    @property
    def L2(self) -> int:
        return self.r2.length

    @property
    def period(self) -> int:
        return shrunken_period(self.L1, self.L2)


def shrunken_period(L1: int, L2: int) -> int:
    if L1 < 1 or L2 < 1 or gcd(L1, L2) != 1:
        raise InvalidConfig(f"register lengths {L1} and {L2} are not coprime")
    return (2**L2 - 1) * 2 ** (L1 - 1)


def shrunken_lc_bounds(L1: int, L2: int) -> tuple[int, int]:
    """Bounds on the linear complexity ``L * L2`` with ``2^(L1-2) < L <= 2^(L1-1)``."""
    shrunken_period(L1, L2)
    if L1 < 2:
        raise InvalidConfig("selector register needs length >= 2")
    return L2 * (2 ** (L1 - 2) + 1), L2 * 2 ** (L1 - 1)


def shrink(selector, data) -> BinarySequence:
    """Keep ``data[i]`` wherever ``selector[i] == 1``."""
    a = np.asarray(getattr(selector, "bits", selector), dtype=np.uint8)
    b = np.asarray(getattr(data, "bits", data), dtype=np.uint8)
    n = min(a.size, b.size)
    return BinarySequence(b[:n][a[:n] == 1])


def selector_ones(r1: LfsrConfig, count: int) -> np.ndarray:
    """Indices of the first ``count`` ones of the selector sequence."""
    T1 = 2**r1.length - 1
    period = lfsr_generate(r1, T1).bits
    ones = np.flatnonzero(period)
    reps = -(-count // ones.size)
    tiled = (ones[None, :] + T1 * np.arange(reps)[:, None]).ravel()
    return tiled[:count]


def shrunken_generate(cfg: ShrinkingGeneratorConfig, n: int) -> BinarySequence:
    if n < 1:
        raise ValueError("n must be at least 1")
    idx = selector_ones(cfg.r1, n)
    T2 = 2**cfg.L2 - 1
    b = lfsr_generate(cfg.r2, min(T2, int(idx[-1]) + 1)).bits
    bits = b[idx % T2] if b.size == T2 else b[idx]
    T = cfg.period
    return BinarySequence(bits, T)


def normalize_phase(cfg: ShrinkingGeneratorConfig) -> ShrinkingGeneratorConfig:
    """Advance both registers to the first selector one, so that a_0 = 1.

    The normalized key produces the same shrunken sequence.
    """
    i0 = int(selector_ones(cfg.r1, 1)[0])
    if i0 == 0:
        return cfg
    a = lfsr_generate(cfg.r1, i0 + cfg.L1).bits[i0:]
    T2 = 2**cfg.L2 - 1
    b = lfsr_generate(cfg.r2, i0 % T2 + cfg.L2).bits[i0 % T2 :]
    return ShrinkingGeneratorConfig(LfsrConfig(cfg.r1.poly, a), LfsrConfig(cfg.r2.poly, b))


def interleaved_polynomial(p2, L1: int) -> BinaryPolynomial:
    """Characteristic polynomial of the interleaved m-sequences.

    Minimal polynomial of alpha^T1 where alpha is a root of ``p2``.
    """
    tables = build_field(p2)
    return minimal_polynomial(tables, (2**L1 - 1) % tables.order)


def compute_delta(L1: int, L2: int) -> int:
    T1, T2 = 2**L1 - 1, 2**L2 - 1
    if gcd(T1, T2) != 1:
        raise InvalidConfig(f"T1={T1} and T2={T2} are not coprime")
    if T2 == 1:
        return 0
    delta = pow(T1, -1, T2)
    if L2 == L1 + 1:
        assert delta == T2 - 2
    return delta


@dataclass(frozen=True)
class InterleavedDecomposition:
    d: int
    subsequences: tuple[BinarySequence, ...]
    offsets: tuple[int, ...]
    poly: BinaryPolynomial

    @property
    def first(self) -> BinarySequence:
        return self.subsequences[0]


def _window_index(v: np.ndarray, L: int) -> dict[int, int]:
    """Map each L-bit cyclic window value of v to its start index."""
    ext = np.concatenate([v, v[: L - 1]]).astype(np.int64)
    vals = np.zeros(v.size, dtype=np.int64)
    for j in range(L):
        vals |= ext[j : j + v.size] << j
    return {int(x): i for i, x in enumerate(vals)}


def interleave_decompose(s: BinarySequence, L1: int) -> InterleavedDecomposition:
    """Split a shrunken sequence into its 2^(L1-1) interleaved m-sequences."""
    d = 2 ** (L1 - 1)
    T = s.period if s.period is not None else find_period(s)
    if T > len(s):
        raise NotDecomposable(f"need a full period of {T} bits, have {len(s)}")
    if T % d:
        raise NotDecomposable(f"period {T} is not a multiple of {d}")
    T2 = T // d
    L2 = T2.bit_length()
    if T2 < 3 or T2 != 2**L2 - 1:
        raise NotDecomposable(f"interleaved period {T2} is not of the form 2^L - 1")
    periodic = BinarySequence(s.bits[:T], T)
    subs = tuple(decimate(periodic, d, k, T2) for k in range(d))
    v = subs[0].bits
    ext = np.concatenate([v, v])
    lc, poly = berlekamp_massey(ext)
    if lc != L2 or not is_primitive(poly.mask):
        raise NotDecomposable(f"first subsequence is not an m-sequence of degree {L2}")
    where = _window_index(v, L2)
    offsets = []
    for k, sub in enumerate(subs):
        head = sum(int(b) << j for j, b in enumerate(sub.bits[:L2]))
        off = where.get(head)
        if off is None or not np.array_equal(np.roll(v, -off), sub.bits):
            raise NotDecomposable(f"subsequence {k} is not a cyclic shift of subsequence 0")
        offsets.append(off)
    return InterleavedDecomposition(d, subs, tuple(offsets), poly)


def recover_b(first_interleaved: BinarySequence, delta: int) -> BinarySequence:
    """Decimating the first interleaved m-sequence by delta yields {b_i}."""
    T2 = first_interleaved.period or len(first_interleaved)
    periodic = BinarySequence(first_interleaved.bits[:T2], T2)
    return decimate(periodic, delta, 0, T2)


def offsets_from_ones_positions(positions, delta: int, T2: int) -> list[int]:
    return [delta * int(i) % T2 for i in positions]


def _gap_budget(L1: int) -> dict[int, int]:
    # distances between consecutive ones (cyclically) of any degree-L1 m-sequence
    if L1 == 1:
        return {1: 1}
    budget = {1: 2 ** (L1 - 2), L1: 1}
    for g in range(2, L1):
        budget[g] = 2 ** (L1 - g - 1)
    return budget


def _complete_lift(prefix_ones, T1: int, L1: int, offsets, delta: int, T2: int):
    # the known prefix ends at the last chosen one; 2*L1 bits fix the recurrence
    n = T1 if len(prefix_ones) == len(offsets) else prefix_ones[-1] + 1
    bits = np.zeros(n, dtype=np.uint8)
    bits[prefix_ones] = 1
    lc, poly = berlekamp_massey(np.concatenate([bits, bits]) if n == T1 else bits)
    if lc != L1 or not is_primitive(poly.mask):
        return None
    full = recurrence_extend(poly.mask, bits[:L1], T1)
    if not np.array_equal(full[:n], bits):
        return None
    ones = np.flatnonzero(full)
    if ones.size != len(offsets) or np.any(delta * ones % T2 != np.asarray(offsets) % T2):
        return None
    return ones.tolist()


def ones_positions_from_offsets(offsets, delta: int, T2: int) -> list[int]:
    """Invert ``d_k = delta * i_k mod T2`` for the ascending one positions i_k.

    ``i_k`` is known modulo T2 as ``T1 * d_k``. Every gap between consecutive
    ones of a degree-L1 m-sequence lies in ``1..L1`` with a fixed count per
    length, so lifts are searched depth first, smallest gap first, within those
    counts. Once the chosen ones span 2*L1 bits the recurrence is fixed and the
    rest of the sequence is checked directly. When ``T2 >= L1`` every gap has a
    single lift and the search never backtracks.
    """
    offsets = [int(x) for x in offsets]
    if not offsets or offsets[0] != 0:
        raise InconsistentOffsets("first offset must be 0")
    d = len(offsets)
    T1 = 2 * d - 1
    L1 = (T1 + 1).bit_length() - 1
    if T1 != 2**L1 - 1:
        raise InconsistentOffsets(f"{d} offsets do not match a selector of period 2^L - 1")
    if L1 == 1:
        return [0]
    residues = [T1 * dk % T2 for dk in offsets]
    budget = _gap_budget(L1)
    positions = [0]
    gaps: list[int] = []  # gap taken at each depth, for backtracking
    g = residues[1] % T2 or T2
    while True:
        prev = positions[-1]
        if len(positions) == d or prev + 1 >= 2 * L1:
            found = _complete_lift(positions, T1, L1, offsets, delta, T2)
            if found is not None:
                return found
        else:
            while g <= L1 and not (budget.get(g, 0) > 0 and prev + g < T1):
                g += T2
            if g <= L1:
                budget[g] -= 1
                gaps.append(g)
                positions.append(prev + g)
                if len(positions) < d:
                    g = (residues[len(positions)] - positions[-1]) % T2 or T2
                continue
        if not gaps:
            raise InconsistentOffsets("no selector m-sequence has ones at positions matching these offsets")
        last = gaps.pop()
        positions.pop()
        budget[last] += 1
        g = last + T2


def recover_a(positions, T1: int) -> BinarySequence:
    """Selector m-sequence with ones exactly at ``positions``."""
    bits = np.zeros(T1, dtype=np.uint8)
    pos = np.asarray(list(positions), dtype=np.int64)
    if pos.size == 0 or 0 not in pos or pos.min() < 0 or pos.max() >= T1:
        raise NotAnMSequence("positions must contain 0 and lie in [0, T1-1]")
    bits[pos] = 1
    L1 = (T1 + 1).bit_length() - 1
    if T1 != 2**L1 - 1:
        raise NotAnMSequence(f"T1={T1} is not of the form 2^L - 1")
    lc, poly = berlekamp_massey(np.concatenate([bits, bits]))
    if lc != L1 or not is_primitive(poly.mask):
        raise NotAnMSequence(f"recovered bits have linear complexity {lc}, expected {L1}")
    return BinarySequence(bits, T1)
