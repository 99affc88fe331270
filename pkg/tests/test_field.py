import numpy as np
import pytest

from shrinkca import gf2poly
from shrinkca.errors import DegreeOutOfRange, ExponentOutOfRange, NonPrimitivePolynomial
from shrinkca.field import (
    MINUS_INFINITY,
    FieldTables,
    ZechResolver,
    add_exponents,
    build_field,
    coset,
    cyclotomic_cosets,
    minimal_polynomial,
    zech,
    zech_properties_check,
    zech_table_csv,
)

TABLE4 = {
    1: 18, 2: 5, 3: 29, 4: 10, 5: 2, 6: 27, 7: 22, 8: 20, 9: 16, 10: 4,
    11: 19, 12: 23, 13: 14, 14: 13, 15: 24, 16: 9, 17: 30, 18: 1, 19: 11, 20: 8,
    21: 25, 22: 7, 23: 12, 24: 15, 25: 21, 26: 28, 27: 6, 28: 26, 29: 3, 30: 17,
}


def slow_zech(mask, t):
    """Zech logarithm by polynomial powering, independent of the tables."""
    L = gf2poly.degree(mask)
    target = gf2poly.powmod(2, t, mask) ^ 1
    for m in range(2**L - 1):
        if gf2poly.powmod(2, m, mask) == target:
            return m
    return None


def test_antilog_gf8():
    tb = build_field("1+x+x^3")
    assert tb.antilog.tolist() == [0b001, 0b010, 0b100, 0b011, 0b110, 0b111, 0b101]
    assert all(tb.log[tb.antilog[t]] == t for t in range(7))


def test_zech_gf8():
    tb = build_field("1+x+x^3")
    assert [zech(tb, t) for t in range(1, 7)] == [3, 6, 1, 5, 4, 2]
    assert zech(tb, 0) is MINUS_INFINITY
    assert zech(tb, MINUS_INFINITY) == 0


def test_zech_gf32_table4():
    tb = build_field("1+x^2+x^5")
    assert {t: zech(tb, t) for t in range(1, 31)} == TABLE4
    assert (zech(tb, 2), zech(tb, 8), zech(tb, 29), zech(tb, 28)) == (5, 20, 3, 26)


@pytest.mark.parametrize("poly", ["1+x+x^4", "1+x^4+x^7", "1+x^3+x^10"])
def test_zech_matches_slow_oracle(poly):
    tb = build_field(poly)
    mask = gf2poly.parse_poly(poly)
    for t in (1, 2, 3, 5, 7, tb.order // 2, tb.order - 1):
        assert zech(tb, t) == slow_zech(mask, t)


def test_example4_field_values():
    tb = build_field("1+x^4+x^7")
    got = {t: zech(tb, t) for t in (1, 3, 5, 7, 117, 123, 125)}
    assert got == {1: 97, 3: 123, 5: 50, 7: 4, 117: 90, 123: 3, 125: 65}


def test_build_errors():
    with pytest.raises(DegreeOutOfRange):
        build_field("1+x")
    with pytest.raises(DegreeOutOfRange):
        build_field("1+x^3+x^21")
    with pytest.raises(NonPrimitivePolynomial):
        build_field("1+x+x^2+x^3+x^4")
    with pytest.raises(NonPrimitivePolynomial):
        build_field("x+x^3")


def test_exponent_range():
    tb = build_field("1+x+x^3")
    for bad in (-1, 7, 2.5):
        with pytest.raises(ExponentOutOfRange):
            zech(tb, bad)


def test_add_exponents():
    tb = build_field("1+x+x^3")
    # alpha^1 + alpha^0 = alpha^3
    assert add_exponents(tb, 1, 0) == 3
    assert add_exponents(tb, 4, 4) is MINUS_INFINITY
    assert add_exponents(tb, MINUS_INFINITY, 5) == 5


def test_csv():
    text = zech_table_csv(build_field("1+x^2+x^5"))
    lines = text.splitlines()
    assert lines[0] == "x,zech_x"
    assert len(lines) == 32
    assert lines[1] == "0,-inf" and lines[2] == "1,18"


def test_cosets_L5():
    part = cyclotomic_cosets(5)
    got = {c.leader: set(c.members) for c in part.cosets}
    assert got == {
        0: {0},
        1: {1, 2, 4, 8, 16},
        3: {3, 6, 12, 24, 17},
        5: {5, 10, 20, 9, 18},
        7: {7, 14, 28, 25, 19},
        11: {11, 22, 13, 26, 21},
        15: {15, 30, 29, 27, 23},
    }
    assert part.leaders() == sorted(part.leaders())
    assert part.coset_of(26).leader == 11


def test_cosets_small():
    assert [c.members for c in cyclotomic_cosets(3).cosets] == [(0,), (1, 2, 4), (3, 5, 6)]
    assert [c.members for c in cyclotomic_cosets(2).cosets] == [(0,), (1, 2)]
    assert coset(9, 5) == (5, 9, 10, 18, 20)


def test_properties_clean_up_to_degree_10():
    for L in range(2, 11):
        for mask in gf2poly.primitive_polynomials(L):
            assert zech_properties_check(build_field(mask)) == []


def test_properties_detect_fault():
    tb = build_field("1+x^2+x^5")
    z = tb.zech.copy()
    z[1] = 19
    bad = FieldTables(tb.poly, tb.order, tb.antilog, tb.log, z)
    assert zech_properties_check(bad)


def test_complement_spot_value():
    tb = build_field("1+x+x^3")
    q = 8
    assert zech(tb, q - 1 - 2) == 4 == (zech(tb, 2) - 2) % (q - 1)


@pytest.mark.parametrize(
    "p2, e, expected",
    [("1+x+x^4", 7, "1+x^3+x^4"), ("1+x^3+x^7", 63, "1+x^4+x^7"), ("1+x+x^3", 0, "1+x")],
)
def test_minimal_polynomial(p2, e, expected):
    assert str(minimal_polynomial(build_field(p2), e)) == expected


def test_minimal_polynomial_coset_invariant():
    tb = build_field("1+x^2+x^5")
    for c in cyclotomic_cosets(5).cosets:
        polys = {minimal_polynomial(tb, m).mask for m in c.members}
        assert len(polys) == 1
        assert gf2poly.degree(polys.pop()) == len(c)


def test_resolver_economy_example4():
    # Z(1) and Z(5) determine every logarithm the worked trace needs
    tb = build_field("1+x^4+x^7")
    res = ZechResolver(tb)
    res(1)
    res(5)
    reads = res.table_lookups
    assert [res(t) for t in (97, 7, 4, 123, 3, 125, 10, 117)] == [1, 4, 7, 3, 123, 65, 100, 90]
    assert res.table_lookups == reads == 2
    assert res.derived == 8


def test_resolver_agrees_with_table():
    tb = build_field("1+x^3+x^7")
    res = ZechResolver(tb)
    for t in np.random.default_rng(0).integers(1, tb.order, 300):
        assert res(int(t)) == zech(tb, int(t))
    assert res.total == 300
