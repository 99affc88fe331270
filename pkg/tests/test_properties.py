"""Property suites over random and exhaustive configurations."""

import itertools
from math import gcd

import numpy as np
import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from shrinkca.attack import (
    RecoveredBitMatrix,
    attack_setup,
    brute_force_oracle,
    exhaustive_attack,
    subcrypto,
)
from shrinkca.automaton import (
    Boundary,
    CellularAutomaton,
    CompanionOffsets,
    Rule,
    ca_evolve,
    ca_step,
    companion_offsets_shortcut,
    companion_offsets_step,
    shift_D,
    shrunken_ca,
)
from shrinkca.errors import DegenerateDifference
from shrinkca.field import (
    MINUS_INFINITY,
    ZechResolver,
    add_exponents,
    build_field,
    cyclotomic_cosets,
    minimal_polynomial,
    zech_properties_check,
)
from shrinkca.gf2poly import format_poly, primitive_polynomials
from shrinkca.sequences import (
    BinarySequence,
    LfsrConfig,
    berlekamp_massey,
    decimate,
    interleave,
    lfsr_generate,
    ones_count,
)
from shrinkca.shrinking import (
    ShrinkingGeneratorConfig,
    compute_delta,
    interleave_decompose,
    interleaved_polynomial,
    normalize_phase,
    ones_positions_from_offsets,
    recover_a,
    recover_b,
    shrunken_generate,
    shrunken_lc_bounds,
)

PRIMS = {L: primitive_polynomials(L) for L in range(2, 11)}
FIELDS = {m: build_field(format_poly(m)) for L in range(2, 11) for m in PRIMS[L]}
MANY = settings(max_examples=1000, deadline=None, suppress_health_check=[HealthCheck.too_slow])


def coprime_pairs(lo, hi):
    return [(a, b) for a in range(lo, hi + 1) for b in range(max(lo, 2), hi + 1) if a != b and gcd(a, b) == 1]


@st.composite
def configs(draw, max_L):
    L1, L2 = draw(st.sampled_from(coprime_pairs(2, max_L)))
    p1 = draw(st.sampled_from(PRIMS[L1]))
    p2 = draw(st.sampled_from(PRIMS[L2]))
    i1 = draw(st.integers(1, 2**L1 - 1))
    i2 = draw(st.integers(1, 2**L2 - 1))
    bits = lambda v, L: [(v >> (L - 1 - j)) & 1 for j in range(L)]
    return ShrinkingGeneratorConfig.from_text(format_poly(p1), bits(i1, L1), format_poly(p2), bits(i2, L2))


# ---- Zech identities, exhaustive over every primitive polynomial of degree <= 10


@pytest.mark.parametrize("L", range(2, 11))
def test_zech_identities_exhaustive(L):
    for m in PRIMS[L]:
        tables = FIELDS[m]
        assert zech_properties_check(tables) == []
        q1 = tables.order
        Z = np.asarray(tables.zech)
        t = np.arange(1, q1)
        assert np.all(tables.antilog[Z[t]] == tables.antilog[t] ^ 1)
        involutive = Z[t] != t
        assert np.all(Z[Z[t[involutive]]] == t[involutive])
        assert np.all(Z[2 * t % q1] == 2 * Z[t] % q1)
        assert np.all(Z[q1 - t] == (Z[t] - t) % q1)


@pytest.mark.parametrize("L", range(2, 11))
def test_zech_maps_cosets_onto_cosets(L):
    part = cyclotomic_cosets(L)
    for m in PRIMS[L]:
        Z = FIELDS[m].zech
        for c in part.cosets:
            if c.leader == 0:
                continue
            image = {int(Z[x]) for x in c.members}
            assert len(image) == len(c.members)
            assert image == set(part.coset_of(next(iter(image))).members)


@pytest.mark.parametrize("L", range(2, 7))
def test_zech_sum_symmetry_and_three_term_identity(L):
    for m in PRIMS[L]:
        tables = FIELDS[m]
        q1 = tables.order
        xs = range(q1)
        for a1, a2 in itertools.product(xs, xs):
            assert add_exponents(tables, a1, a2) == add_exponents(tables, a2, a1)
        for a1, a2, a3 in itertools.product(xs, xs, xs):
            b1 = add_exponents(tables, a1, a2)
            b2 = add_exponents(tables, a2, a3)
            assert add_exponents(tables, a1, a3) == add_exponents(tables, b1, b2)


@pytest.mark.parametrize("L", range(2, 9))
def test_minimal_polynomial_constant_on_cosets(L):
    part = cyclotomic_cosets(L)
    tables = FIELDS[PRIMS[L][0]]
    for c in part.cosets:
        polys = {minimal_polynomial(tables, e).mask for e in c.members}
        assert len(polys) == 1


@MANY
@given(st.sampled_from(sorted(FIELDS)), st.data())
def test_resolver_agrees_with_table(m, data):
    tables = FIELDS[m]
    res = ZechResolver(tables)
    for t in data.draw(st.lists(st.integers(0, tables.order - 1), min_size=1, max_size=20)):
        expected = MINUS_INFINITY if t == 0 else int(tables.zech[t])
        assert res(t) == expected


# ---- cellular automata

STATES = st.lists(st.integers(0, 1), min_size=1, max_size=64)


@MANY
@given(st.data(), st.sampled_from(list(Rule)), st.sampled_from(list(Boundary)))
def test_ca_linearity(data, rule, boundary):
    a = data.draw(STATES)
    b = data.draw(st.lists(st.integers(0, 1), min_size=len(a), max_size=len(a)))
    x = np.array(a, dtype=np.uint8) ^ np.array(b, dtype=np.uint8)
    lhs = ca_step(CellularAutomaton(x, rule, boundary)).state
    rhs = ca_step(CellularAutomaton(a, rule, boundary)).state ^ ca_step(CellularAutomaton(b, rule, boundary)).state
    assert np.array_equal(lhs, rhs)


@MANY
@given(STATES)
def test_rule60_mirrors_rule102(a):
    r102 = ca_step(CellularAutomaton(a, Rule.RULE_102)).state
    r60 = ca_step(CellularAutomaton(a[::-1], Rule.RULE_60)).state
    assert np.array_equal(r60, r102[::-1])


def _all_configs(max_L):
    for L1, L2 in coprime_pairs(2, max_L):
        for m1, m2 in itertools.product(PRIMS[L1], PRIMS[L2]):
            yield ShrinkingGeneratorConfig.from_text(format_poly(m1), "1" * L1, format_poly(m2), "1" * L2)


def test_ca_model_exhaustive_small():
    checked = 0
    for cfg in _all_configs(5):
        T = cfg.period
        s = shrunken_generate(cfg, T)
        tables = build_field(interleaved_polynomial(cfg.r2.poly, cfg.L1))
        z1 = int(tables.zech[1])
        ca = shrunken_ca(s, cfg.L1, cfg.L2, z1)
        grid = ca_evolve(ca, T)
        d = 2 ** (cfg.L1 - 1)
        D = shift_D(cfg.L1, z1, T)
        assert np.array_equal(grid[:, 0], s.bits)
        for t in range(ca.length // d):
            assert np.array_equal(grid[:, t * d], np.roll(s.bits, -t * D))
        checked += 1
    assert checked == 72


def _column0_offsets(cfg):
    T = cfg.period
    s = shrunken_generate(cfg, T)
    dec = interleave_decompose(s, cfg.L1)
    tables = build_field(dec.poly)
    return CompanionOffsets(0, dec.offsets, tables.order), tables


@settings(max_examples=300, deadline=None)
@given(configs(6))
def test_offset_step_matches_shortcut_and_skip_level(cfg):
    base, tables = _column0_offsets(cfg)
    d = len(base.offsets)
    D = int(tables.zech[1])
    cols = [base]
    try:
        for _ in range(d + 2):
            cols.append(companion_offsets_step(cols[-1], tables))
    except DegenerateDifference:
        return
    for m in range(3):
        assert companion_offsets_shortcut(cols[m], 1, D, tables.order) == cols[m + d]
    for j in range(2, len(cols)):
        prev2 = cols[j - 2].offsets
        for k in range(d - 2):
            assert cols[j].offsets[k] == add_exponents(tables, prev2[k], prev2[k + 2])
            assert cols[j].offsets[k] == add_exponents(tables, prev2[k + 2], prev2[k])


# ---- sequences and decomposition


@MANY
@given(st.sampled_from(sorted(FIELDS)), st.data())
def test_lfsr_ones_count_and_bm(m, data):
    L = m.bit_length() - 1
    init = data.draw(st.integers(1, 2**L - 1))
    cfg = LfsrConfig(format_poly(m), [(init >> j) & 1 for j in range(L)])
    seq = lfsr_generate(cfg, 2 * (2**L - 1))
    start = data.draw(st.integers(0, 2**L - 2))
    assert ones_count(seq.bits[start : start + 2**L - 1]) == 2 ** (L - 1)
    lc, poly = berlekamp_massey(seq.bits[: 2 * L])
    assert (lc, poly.mask) == (L, m)
    dist = data.draw(st.integers(1, 2**L - 2).filter(lambda x: gcd(x, 2**L - 1) == 1))
    dec = decimate(seq, dist, 0, 2 * (2**L - 1))
    assert dec.period == 2**L - 1
    assert berlekamp_massey(dec.bits)[0] == L
    parts = [decimate(seq, 3, k, 20) for k in range(3)]
    assert np.array_equal(interleave(parts).bits, seq.extended(60))


@MANY
@given(configs(8))
def test_decompose_recover_round_trip(cfg):
    cfg = normalize_phase(cfg)
    T1, T2 = 2**cfg.L1 - 1, 2**cfg.L2 - 1
    delta = compute_delta(cfg.L1, cfg.L2)
    s = shrunken_generate(cfg, cfg.period)
    dec = interleave_decompose(s, cfg.L1)
    assert dec.d == 2 ** (cfg.L1 - 1)
    assert dec.poly == interleaved_polynomial(cfg.r2.poly, cfg.L1)
    positions = ones_positions_from_offsets(dec.offsets, delta, T2)
    assert len(positions) == 2 ** (cfg.L1 - 1)
    a = recover_a(positions, T1)
    assert np.array_equal(a.bits, lfsr_generate(cfg.r1, T1).bits)
    b = recover_b(dec.first, delta)
    assert b.cyclic_equal(lfsr_generate(cfg.r2, T2))


@settings(max_examples=200, deadline=None)
@given(configs(6))
def test_linear_complexity_bounds(cfg):
    s = shrunken_generate(cfg, 2 * cfg.period)
    lc, _ = berlekamp_massey(s.bits)
    lo, hi = shrunken_lc_bounds(cfg.L1, cfg.L2)
    assert lo <= lc <= hi and lc % cfg.L2 == 0
    L = lc // cfg.L2
    assert 2 ** (cfg.L1 - 2) < L <= 2 ** (cfg.L1 - 1)


# ---- attack


@MANY
@given(configs(6), st.integers(2, 40))
def test_attack_survivors_contained_in_oracle(cfg, n):
    s = shrunken_generate(cfg, n)
    rep = exhaustive_attack(cfg.r1.poly, cfg.r2.poly, s)
    true_r1 = normalize_phase(cfg).r1.initial_state
    survivors = [c.candidate for c in rep.survivors]
    assert true_r1 in survivors
    assert rep.candidates_tested == 2 ** (cfg.L1 - 1)
    pairs = set(brute_force_oracle(cfg.r1.poly, cfg.r2.poly, s))
    for c, r2 in zip(rep.survivors, rep.recovered_r2_states):
        if r2 is not None:
            assert (c.candidate, r2) in pairs


@settings(max_examples=300, deadline=None)
@given(configs(7), st.integers(2, 60))
def test_soundness_shortcut_and_monotonicity(cfg, n):
    setup = attack_setup(cfg.r1.poly, cfg.r2.poly)
    s = shrunken_generate(cfg, n)
    a = normalize_phase(cfg).r1.initial_state
    fast = subcrypto(setup.p1, setup.p, setup.delta, s, a, tables=setup.tables)
    slow = subcrypto(setup.p1, setup.p, setup.delta, s, a, tables=setup.tables, shortcut=False)
    assert fast.stop and slow.stop
    assert dict(fast.matrix.pairs()) == dict(slow.matrix.pairs())
    counts = [exhaustive_attack(cfg.r1.poly, cfg.r2.poly, s[:k], recover_r2=False).survivor_count
              for k in (max(2, n // 3), max(2, 2 * n // 3), n)]
    assert counts == sorted(counts, reverse=True)


def test_collision_semantics():
    m = RecoveredBitMatrix(127)
    assert m.store(111, 1) and m.store(111, 1)
    assert len(m) == 1
    assert not m.store(111, 0)
