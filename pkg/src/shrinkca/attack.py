"""Recovering both shrinking-generator registers from a short keystream segment.

Every intercepted bit ``s_k`` is a bit of the first interleaved m-sequence
``v``: ``s_k = v[delta * i_k mod T2]`` where ``i_k`` is the index of the k-th
one of the selector sequence. Guessing the selector state fixes the ``i_k``.
Rule 102 then turns neighbouring bits into new bits of ``v`` whose positions
follow from Zech logarithms, and two different bits at one position rule the
guess out.
"""

from __future__ import annotations

import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import gcd

import numpy as np

from .errors import (
    BadCandidate,
    BudgetExceeded,
    InsufficientBits,
    InvalidConfig,
    SearchSpaceTooLarge,
)
from .field import MINUS_INFINITY, FieldTables, ZechResolver, build_field
from .gf2poly import BinaryPolynomial, as_mask, format_poly, is_primitive
from .sequences import BinarySequence, LfsrConfig, _as_bits, lfsr_generate, recurrence_extend
from .shrinking import compute_delta, interleaved_polynomial, selector_ones

ORACLE_LIMIT = 2**24


@dataclass
class RecoveredBitMatrix:
    """Recovered bits of the first interleaved m-sequence, keyed by position."""

    modulus: int
    entries: dict = field(default_factory=dict)

    def store(self, position: int, bit: int) -> bool:
        """Record a bit; False if a different bit is already at ``position``."""
        if not 0 <= position < self.modulus:
            raise ValueError(f"position {position} outside [0, {self.modulus - 1}]")
        old = self.entries.get(position)
        if old is None:
            self.entries[position] = int(bit)
            return True
        return old == bit

    def __len__(self):
        return len(self.entries)

    def __contains__(self, position):
        return position in self.entries

    def __getitem__(self, position):
        return self.entries[position]

    def pairs(self) -> list[tuple[int, int]]:
        return sorted(self.entries.items())


@dataclass
class CandidateResult:
    candidate: tuple[int, ...]
    stop: bool  # True when no contradiction was found
    matrix: RecoveredBitMatrix
    contradiction_position: object = None  # int, or MINUS_INFINITY for a forced-zero bit
    rounds_executed: int = 0
    zech_lookups: int = 0
    zech_table_reads: int = 0
    trace: tuple | None = None  # positions per round, when requested

    @property
    def state_text(self) -> str:
        return "".join(map(str, self.candidate))


def _state_tuple(a) -> tuple[int, ...]:
    return tuple(int(b) for b in _as_bits(a))


def subcrypto(
    p1,
    p,
    delta: int,
    s,
    a,
    *,
    tables: FieldTables | None = None,
    shortcut: bool = True,
    record_trace: bool = False,
) -> CandidateResult:
    """Test one selector initial state ``a`` against the intercepted bits ``s``.

    Each round replaces the working bits by their neighbour sums and moves the
    positions with ``Z(P_k - P_{k+1}) + P_{k+1}``. From round ``d = 2^(L1-1)``
    on, round ``t*d + m`` positions are those of round m plus ``t*Z(1)`` when
    ``shortcut`` is set, with no Zech lookups.
    """
    a = _state_tuple(a)
    if not a or a[0] != 1:
        raise BadCandidate(f"candidate {''.join(map(str, a))} must start with 1")
    p1_mask = as_mask(p1)
    if len(a) != p1_mask.bit_length() - 1:
        raise BadCandidate(f"candidate has {len(a)} bits, p1 has degree {p1_mask.bit_length() - 1}")
    tables = tables or build_field(p)
    res = ZechResolver(tables)
    T2 = tables.order
    bits = _as_bits(s).astype(np.uint8)
    n = int(bits.size)
    if n < 1:
        raise ValueError("need at least one intercepted bit")

    idx = selector_ones(LfsrConfig(BinaryPolynomial(p1_mask), a), n)
    positions = [int(delta * int(i) % T2) for i in idx]
    matrix = RecoveredBitMatrix(T2)
    trace = [tuple(positions)] if record_trace else None

    def fail(pos, rounds):
        return CandidateResult(
            a, False, RecoveredBitMatrix(T2), pos, rounds, res.total, res.table_lookups,
            tuple(trace) if trace is not None else None,
        )

    for pos, b in zip(positions, bits):
        if not matrix.store(pos, int(b)):
            return fail(pos, 0)

    d = 2 ** (len(a) - 1)
    z1 = int(tables.zech[1])
    # positions of rounds 0..d-1, kept for the shortcut
    base = [positions] if shortcut else None
    rounds = 0
    while n > 1:
        rounds += 1
        t, m = divmod(rounds, d)
        if shortcut and t >= 1:
            step = t * z1
            positions = [
                x if x is MINUS_INFINITY else (x + step) % T2 for x in base[m][: n - 1]
            ]
        else:
            positions = [res.add(positions[k], positions[k + 1]) for k in range(n - 1)]
            if shortcut and rounds < d:
                base.append(positions)
        bits = bits[:-1] ^ bits[1:]
        n -= 1
        if trace is not None:
            trace.append(tuple(positions))
        for pos, b in zip(positions, bits):
            if pos is MINUS_INFINITY:
                # the two summed shifts coincide, so the bit must be zero
                if b:
                    return fail(MINUS_INFINITY, rounds)
                continue
            if not matrix.store(pos, int(b)):
                return fail(pos, rounds)

    return CandidateResult(
        a, True, matrix, None, rounds, res.total, res.table_lookups,
        tuple(trace) if trace is not None else None,
    )


@dataclass(frozen=True)
class R2Recovery:
    state: tuple[int, ...]
    sequence: BinarySequence  # the first interleaved m-sequence v
    fills: tuple[tuple[int, int], ...]  # (position, bit), ascending within each sweep
    window_start: int
    sweeps: int


def recover_r2_state(matrix: RecoveredBitMatrix, p, delta: int, L2: int, L1: int | None = None) -> R2Recovery:
    """Rebuild ``v`` from its recovered bits and read off R2's initial state.

    Every relation ``sum_j c_j v_{i+j} = 0`` of ``p`` with a single unknown term
    fixes that term, propagating forward and backward. Once L2 consecutive bits
    are known the recurrence yields the whole period. R2's state is ``v`` at ``0, delta, 2*delta, ...`` mod T2.
    """
    mask = as_mask(p)
    if mask.bit_length() - 1 != L2:
        raise InvalidConfig(f"polynomial degree {mask.bit_length() - 1} differs from L2={L2}")
    T2 = 2**L2 - 1
    taps = [j for j in range(L2 + 1) if (mask >> j) & 1]
    known = np.zeros(T2, dtype=bool)
    val = np.zeros(T2, dtype=np.uint8)
    for pos, b in matrix.pairs():
        known[pos % T2] = True
        val[pos % T2] = b

    def window_start():
        if known.all():
            return 0
        ext = np.concatenate([known, known[: L2 - 1]]).astype(np.int32)
        run = np.convolve(ext, np.ones(L2, dtype=np.int32), mode="valid")
        hits = np.flatnonzero(run[:T2] == L2)
        return int(hits[0]) if hits.size else None

    # each sweep solves, against the knowledge at its start, every relation
    # with exactly one unknown term
    rel = (np.arange(T2)[:, None] + np.array(taps)[None, :]) % T2
    fills = []
    sweeps = 0
    w = window_start()
    while w is None:
        unknown = ~known[rel]
        single = unknown.sum(axis=1) == 1
        if not single.any():
            raise InsufficientBits(
                f"{int(known.sum())} of {T2} bits known and no run of {L2} consecutive bits"
            )
        rows = rel[single]
        target = rows[unknown[single]]
        bit = np.bitwise_xor.reduce(np.where(known[rows], val[rows], 0), axis=1)
        order = np.lexsort((bit, target))
        target, bit = target[order], bit[order]
        first = np.ones(target.size, dtype=bool)
        first[1:] = target[1:] != target[:-1]
        if np.any(~first & (bit != np.roll(bit, 1))):
            raise BadCandidate("two relations give different values for one bit")
        target, bit = target[first], bit[first]
        val[target] = bit
        known[target] = True
        fills.extend(zip(target.tolist(), bit.tolist()))
        sweeps += 1
        w = window_start()

    head = val[(w + np.arange(L2)) % T2]
    run = recurrence_extend(mask, head, T2)
    v = np.roll(run, w)
    if not np.array_equal(v[known], val[known]):
        raise BadCandidate("recovered bits are inconsistent with the recurrence of p")
    if not v.any():
        raise BadCandidate("recovered bits force the all-zero R2 sequence")
    state = tuple(int(v[delta * i % T2]) for i in range(L2))
    return R2Recovery(state, BinarySequence(v, T2), tuple(fills), w, sweeps)


@dataclass(frozen=True)
class AttackSetup:
    """Public quantities the attack derives from the two polynomials."""

    p1: BinaryPolynomial
    p2: BinaryPolynomial
    p: BinaryPolynomial
    delta: int
    tables: FieldTables

    @property
    def L1(self) -> int:
        return self.p1.degree

    @property
    def L2(self) -> int:
        return self.p2.degree

    @property
    def period(self) -> int:
        return 2 ** (self.L1 - 1) * (2**self.L2 - 1)

    @property
    def zech1(self) -> int:
        return int(self.tables.zech[1])

    def summary(self) -> dict:
        return {
            "p1": format_poly(self.p1.mask),
            "p2": format_poly(self.p2.mask),
            "L1": self.L1,
            "L2": self.L2,
            "T": self.period,
            "p": format_poly(self.p.mask),
            "delta": self.delta,
        }


def attack_setup(p1, p2) -> AttackSetup:
    m1, m2 = as_mask(p1), as_mask(p2)
    L1, L2 = m1.bit_length() - 1, m2.bit_length() - 1
    if L1 < 1 or L2 < 2:
        raise InvalidConfig("register lengths must be at least 1 and 2")
    if gcd(L1, L2) != 1:
        raise InvalidConfig(f"register lengths {L1} and {L2} are not coprime")
    for name, m in (("p1", m1), ("p2", m2)):
        if not is_primitive(m):
            raise InvalidConfig(f"{name} = {format_poly(m)} is not primitive")
    p = interleaved_polynomial(m2, L1)
    return AttackSetup(
        BinaryPolynomial(m1), BinaryPolynomial(m2), p, compute_delta(L1, L2), build_field(p)
    )


def candidate_state(L1: int, index: int) -> tuple[int, ...]:
    """The ``index``-th selector state with leading bit 1, in ascending order."""
    value = (1 << (L1 - 1)) | index
    return tuple((value >> (L1 - 1 - j)) & 1 for j in range(L1))


@dataclass
class AttackReport:
    config: dict
    n_intercepted: int
    survivors: list
    recovered_r2_states: list  # one entry per survivor, None where not derivable
    candidates_tested: int
    zech_lookups_total: int
    wall_time: float
    worker_count: int

    @property
    def survivor_count(self) -> int:
        return len(self.survivors)

    def to_dict(self, timing: bool = True) -> dict:
        return {
            "config": self.config,
            "n": self.n_intercepted,
            "survivor_count": self.survivor_count,
            "survivors": [
                {
                    "state": c.state_text,
                    "contradiction": None,
                    "recovered_r2": None if r2 is None else "".join(map(str, r2)),
                    "matrix_size": len(c.matrix),
                }
                for c, r2 in zip(self.survivors, self.recovered_r2_states)
            ],
            "candidates_tested": self.candidates_tested,
            "zech_lookups_total": self.zech_lookups_total,
            "elapsed_ms": round(self.wall_time * 1000, 3) if timing else None,
        }


def _scan(args):
    p1_mask, p_mask, delta, s_bytes, L1, start, stop, shortcut, deadline = args
    tables = build_field(p_mask)
    s = np.frombuffer(s_bytes, dtype=np.uint8)
    survivors = []
    lookups = 0
    for c in range(start, stop):
        if deadline is not None and time.time() > deadline:
            raise BudgetExceeded(f"time budget exhausted at candidate {c}")
        r = subcrypto(p1_mask, p_mask, delta, s, candidate_state(L1, c), tables=tables, shortcut=shortcut)
        lookups += r.zech_lookups
        if r.stop:
            survivors.append(r)
    return survivors, lookups


def _ranges(total: int, parts: int) -> list[tuple[int, int]]:
    parts = max(1, min(parts, total))
    q, r = divmod(total, parts)
    out, lo = [], 0
    for i in range(parts):
        hi = lo + q + (1 if i < r else 0)
        out.append((lo, hi))
        lo = hi
    return out


def exhaustive_attack(
    p1,
    p2,
    s,
    workers: int | None = 1,
    *,
    shortcut: bool = True,
    budget: float | None = None,
    recover_r2: bool = True,
) -> AttackReport:
    """Run :func:`subcrypto` on all ``2^(L1-1)`` selector states with a leading 1.

    Candidates are split into contiguous ranges, one per worker, and the
    survivors are merged back in ascending candidate order. ``budget`` is a
    wall-clock limit in seconds.
    """
    t0 = time.perf_counter()
    setup = attack_setup(p1, p2)
    bits = _as_bits(s).astype(np.uint8)
    if bits.size < 2:
        raise InvalidConfig("need at least two intercepted bits")
    total = 2 ** (setup.L1 - 1)
    if workers is None:
        workers = os.cpu_count() or 1
    workers = max(1, int(workers))
    deadline = time.time() + budget if budget is not None else None
    jobs = [
        (setup.p1.mask, setup.p.mask, setup.delta, bits.tobytes(), setup.L1, lo, hi, shortcut, deadline)
        for lo, hi in _ranges(total, workers)
    ]
    if len(jobs) == 1 or total < 64:
        results = [_scan(j) for j in jobs]
        used = 1
    else:
        with ProcessPoolExecutor(max_workers=len(jobs)) as pool:
            results = list(pool.map(_scan, jobs))
        used = len(jobs)

    survivors, lookups = [], 0
    for surv, count in results:
        survivors.extend(surv)
        lookups += count
    r2_states = []
    for c in survivors:
        state = None
        if recover_r2:
            try:
                state = recover_r2_state(c.matrix, setup.p, setup.delta, setup.L2, setup.L1).state
            except (InsufficientBits, BadCandidate):
                state = None
        r2_states.append(state)
    return AttackReport(
        setup.summary(), int(bits.size), survivors, r2_states, total, lookups,
        time.perf_counter() - t0, used,
    )


def brute_force_oracle(p1, p2, s) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Every nonzero state pair whose shrunken output starts with ``s``.

    R2's output from any nonzero state is a shift of one m-sequence, so all
    R2 states for a given R1 state are tested at once as phases of that sequence.
    """
    m1, m2 = as_mask(p1), as_mask(p2)
    L1, L2 = m1.bit_length() - 1, m2.bit_length() - 1
    T1, T2 = 2**L1 - 1, 2**L2 - 1
    if T1 * T2 > ORACLE_LIMIT:
        raise SearchSpaceTooLarge(f"{T1 * T2} state pairs exceed the oracle limit of {ORACLE_LIMIT}")
    for name, m in (("p1", m1), ("p2", m2)):
        if not is_primitive(m):
            raise InvalidConfig(f"{name} = {format_poly(m)} is not primitive")
    bits = _as_bits(s).astype(np.uint8)
    n = int(bits.size)
    unit1 = (1,) + (0,) * (L1 - 1)
    unit2 = (1,) + (0,) * (L2 - 1)
    a = lfsr_generate(LfsrConfig(BinaryPolynomial(m1), unit1), T1).bits
    b = lfsr_generate(LfsrConfig(BinaryPolynomial(m2), unit2), T2).bits
    ones = np.flatnonzero(a)
    b_ext = np.concatenate([b, b[: L2 - 1]])
    a_ext = np.concatenate([a, a[: L1 - 1]])
    phases2 = np.arange(T2)
    out = []
    for psi in range(T1):
        # indices of the first n ones of a shifted by psi
        rel = np.sort((ones - psi) % T1)
        reps = -(-n // rel.size)
        idx = (rel[None, :] + T1 * np.arange(reps)[:, None]).ravel()[:n]
        block = b[(phases2[:, None] + idx[None, :]) % T2]
        for phi in np.flatnonzero((block == bits[None, :]).all(axis=1)):
            out.append(
                (tuple(int(x) for x in a_ext[psi : psi + L1]), tuple(int(x) for x in b_ext[phi : phi + L2]))
            )
    out.sort()
    return out
