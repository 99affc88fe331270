import pytest

from shrinkca import gf2poly
from shrinkca.errors import NonPrimitivePolynomial, PolynomialFormatError
from shrinkca.gf2poly import BinaryPolynomial, PrimitivePolynomial


@pytest.mark.parametrize(
    "text, mask",
    [
        ("1+x+x^3", 0b1011),
        ("x^3 + x + 1", 0b1011),
        ("x^{10}+x^3+1", (1 << 10) | 0b1001),
        ("1101", 0b1011),  # little-endian coefficient string
        ("1", 1),
    ],
)
def test_parse(text, mask):
    assert gf2poly.parse_poly(text) == mask


@pytest.mark.parametrize("bad", ["", "1+y", "x^", "2+x"])
def test_parse_rejects(bad):
    with pytest.raises(PolynomialFormatError):
        gf2poly.parse_poly(bad)


def test_format_round_trip():
    for m in (0b111, 0b1011, 0b10000001001, 1):
        assert gf2poly.parse_poly(gf2poly.format_poly(m)) == m
    assert gf2poly.format_poly(0b100101) == "1+x^2+x^5"


def test_products():
    p = BinaryPolynomial.parse("1+x^2+x^3")
    assert p**2 == BinaryPolynomial.parse("1+x^4+x^6")
    assert str(p * BinaryPolynomial.parse("1+x")) == "1+x+x^2+x^4"


@pytest.mark.parametrize(
    "text, expected",
    [
        ("1+x+x^2", True),
        ("1+x^2", False),
        ("1+x+x^2+x^3+x^5", True),
        ("1+x^2+x^5", True),
        ("1+x+x^2+x^4+x^5", True),
        ("1+x^3+x^5", True),
        ("1+x+x^3+x^4+x^5", True),
        ("1+x^2+x^3+x^4+x^5", True),
        ("1+x+x^2+x^3+x^4", False),  # irreducible, order 5
        ("1+x+x^6", True),
    ],
)
def test_is_primitive(text, expected):
    assert gf2poly.is_primitive(gf2poly.parse_poly(text)) is expected


def test_primitive_counts():
    # phi(2^L - 1) / L primitive polynomials of each degree
    assert [len(gf2poly.primitive_polynomials(L)) for L in range(2, 9)] == [1, 2, 2, 6, 6, 18, 16]


def test_primitive_polynomial_validates():
    with pytest.raises(NonPrimitivePolynomial):
        PrimitivePolynomial(gf2poly.parse_poly("1+x^2"))
    assert PrimitivePolynomial.parse("1+x+x^3").degree == 3


def test_reciprocal():
    assert gf2poly.format_poly(gf2poly.reciprocal(gf2poly.parse_poly("1+x^3+x^7"))) == "1+x^4+x^7"
