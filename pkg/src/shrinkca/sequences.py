"""Binary sequences, LFSR generation, decimation and Berlekamp-Massey.

LFSR convention: the initial state is ``(a_0, ..., a_{l-1})`` and every later
term obeys ``a_{i+l} = sum_j c_j a_{i+j}`` where ``c_j`` is bit j of the
characteristic polynomial. Output bit i is ``a_i``.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from math import gcd

import numpy as np

from . import gf2poly
from .errors import IndexOutOfRange, ZeroState
from .gf2poly import BinaryPolynomial


def _as_bits(bits) -> np.ndarray:
    if isinstance(bits, BinarySequence):
        return bits.bits
    if isinstance(bits, str):
        return parse_bits(bits)
    arr = np.asarray(bits, dtype=np.uint8).ravel()
    if arr.size and arr.max() > 1:
        raise ValueError("bits must be 0 or 1")
    return arr


def parse_bits(text: str) -> np.ndarray:
    s = "".join(text.split())
    if set(s) - {"0", "1"}:
        raise ValueError(f"sequence text may only contain 0/1, got {text!r}")
    return np.frombuffer(s.encode(), dtype=np.uint8) - ord("0")


def format_bits(bits) -> str:
    return "".join("1" if b else "0" for b in _as_bits(bits))


class BinarySequence:
    """A finite run of bits, optionally tagged with its known period."""

    __slots__ = ("bits", "period")

    def __init__(self, bits, period: int | None = None):
        arr = np.array(_as_bits(bits), dtype=np.uint8)
        if arr.size == 0:
            raise ValueError("a sequence needs at least one bit")
        if period is not None:
            if period < 1:
                raise ValueError("period must be positive")
            if period < arr.size and not np.array_equal(arr[period:], arr[:-period]):
                raise ValueError(f"bits are not periodic with period {period}")
        arr.setflags(write=False)
        self.bits = arr
        self.period = period

    @classmethod
    def parse(cls, text: str, period: int | None = None):
        return cls(parse_bits(text), period)

    def __len__(self):
        return int(self.bits.size)

    def __getitem__(self, i):
        if isinstance(i, slice):
            return BinarySequence(self.bits[i])
        return int(self.bits[i])

    def __iter__(self):
        return (int(b) for b in self.bits)

    def __eq__(self, other):
        if isinstance(other, BinarySequence):
            return np.array_equal(self.bits, other.bits)
        if isinstance(other, str):
            return format_bits(self.bits) == "".join(other.split())
        return NotImplemented

    def __hash__(self):
        return hash(self.bits.tobytes())

    def __str__(self):
        return format_bits(self.bits)

    def __repr__(self):
        tail = "" if self.period is None else f", period={self.period}"
        text = str(self)
        if len(text) > 64:
            text = text[:61] + "..."
        return f"BinarySequence({text!r}{tail})"

    def at(self, i: int) -> int:
        """Bit i, wrapping through the period when one is known."""
        if self.period is not None:
            return int(self.bits[i % self.period])
        return int(self.bits[i])

    def one_period(self) -> np.ndarray:
        if self.period is None or self.period > len(self):
            raise IndexOutOfRange("no full period available")
        return self.bits[: self.period]

    def extended(self, n: int) -> np.ndarray:
        """First n bits, wrapping cyclically when the period is known."""
        if n <= len(self):
            return self.bits[:n]
        if self.period is None:
            raise IndexOutOfRange(f"need {n} bits but only {len(self)} known and no period")
        return np.resize(self.one_period(), n)

    def cyclic_equal(self, other: BinarySequence) -> bool:
        """Whether two one-period sequences are cyclic shifts of each other."""
        a, b = self.one_period(), other.one_period()
        if a.size != b.size:
            return False
        doubled = np.concatenate([a, a])
        return any(np.array_equal(doubled[k : k + a.size], b) for k in range(a.size))


@dataclass(frozen=True)
class LfsrConfig:
    poly: BinaryPolynomial
    initial_state: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "initial_state", tuple(int(b) for b in _as_bits(self.initial_state)))
        if isinstance(self.poly, (int, str)):
            object.__setattr__(self, "poly", BinaryPolynomial(gf2poly.as_mask(self.poly)))
        if len(self.initial_state) != self.poly.degree:
            raise ValueError(
                f"initial state has {len(self.initial_state)} bits, polynomial degree is {self.poly.degree}"
            )
        if not any(self.initial_state):
            raise ZeroState("LFSR initial state is all zero")

    @property
    def length(self) -> int:
        return self.poly.degree


def recurrence_extend(mask: int, head, n: int) -> np.ndarray:
    """Extend ``head`` (length >= deg) to n terms with the recurrence of ``mask``."""
    l = gf2poly.degree(mask)
    taps = [j for j in range(l) if (mask >> j) & 1]
    out = np.zeros(max(n, len(head)), dtype=np.uint8)
    out[: len(head)] = head
    for i in range(len(head), n):
        b = 0
        base = i - l
        for j in taps:
            b ^= out[base + j]
        out[i] = b
    return out[:n]


def lfsr_generate(cfg: LfsrConfig, n: int) -> BinarySequence:
    if n < 1:
        raise ValueError("n must be at least 1")
    mask = cfg.poly.mask
    l = cfg.length
    if 2 * l < n and l <= 24:
        # packed state: bit j of `state` holds a_{i+j}
        state = sum(b << j for j, b in enumerate(cfg.initial_state))
        taps = mask & ((1 << l) - 1)
        out = np.empty(n, dtype=np.uint8)
        top = l - 1
        for i in range(n):
            out[i] = state & 1
            fb = bin(state & taps).count("1") & 1
            state = (state >> 1) | (fb << top)
        bits = out
    else:
        bits = recurrence_extend(mask, cfg.initial_state, n)
    period = (1 << l) - 1 if gf2poly.is_primitive(mask) else None
    return BinarySequence(bits, period)


def decimate(seq: BinarySequence, distance: int, offset: int, count: int) -> BinarySequence:
    """The subsequence ``seq[offset + distance*j]``, j = 0..count-1."""
    idx = offset + distance * np.arange(count, dtype=np.int64)
    if seq.period is not None and seq.period <= len(seq):
        bits = seq.bits[idx % seq.period]
    else:
        if count and idx[-1] >= len(seq):
            raise IndexOutOfRange(f"index {idx[-1]} beyond {len(seq)} known bits and no period")
        bits = seq.bits[idx]
    period = None
    if seq.period is not None:
        period = seq.period // gcd(seq.period, distance)
    return BinarySequence(bits, period)


def interleave(parts) -> BinarySequence:
    """Inverse of decimating by ``len(parts)`` at offsets 0..len-1."""
    arrs = [_as_bits(p) for p in parts]
    n = min(a.size for a in arrs)
    out = np.empty(n * len(arrs), dtype=np.uint8)
    for k, a in enumerate(arrs):
        out[k :: len(arrs)] = a[:n]
    return BinarySequence(out)


def berlekamp_massey(seq) -> tuple[int, BinaryPolynomial]:
    """Linear complexity and characteristic polynomial of the shortest LFSR.

    Returns ``(lc, p)`` with ``p`` monic of degree ``lc`` in the same convention
    as :func:`lfsr_generate`, so ``lfsr_generate(LfsrConfig(p, seq[:lc]), n)``
    reproduces the input (for lc > 0 and a nonzero head).
    """
    s = [int(b) for b in _as_bits(seq)]
    n = len(s)
    # connection polynomials as int masks: C(x) = 1 + c_1 x + ... + c_L x^L
    C, B = 1, 1
    L, m = 0, 1
    for i in range(n):
        d = s[i]
        for j in range(1, L + 1):
            if (C >> j) & 1:
                d ^= s[i - j]
        if d == 0:
            m += 1
        elif 2 * L <= i:
            T = C
            C ^= B << m
            L = i + 1 - L
            B = T
            m = 1
        else:
            C ^= B << m
            m += 1
    # characteristic polynomial x^L C(1/x)
    p = sum(1 << (L - j) for j in range(L + 1) if (C >> j) & 1)
    return L, BinaryPolynomial(p)


def find_period(seq) -> int:
    """Smallest T with bits[i] == bits[i+T] across the available window.

    Warns when the window holds fewer than two copies of the returned period.
    """
    bits = _as_bits(seq)
    n = bits.size
    for T in range(1, n + 1):
        if T == n or np.array_equal(bits[T:], bits[: n - T]):
            if 2 * T > n:
                warnings.warn(
                    f"period {T} is only a lower-confidence candidate: window of {n} bits "
                    "does not hold two full periods",
                    stacklevel=2,
                )
            return T
    return n  # unreachable


def ones_count(seq) -> int:
    return int(_as_bits(seq).sum())
