from fractions import Fraction as F

import pytest

from mcprod.expressions import ParseError, parse_element, serialize_element
from tests.conftest import rand_element


def test_zero(heisenberg):
    assert parse_element("0", heisenberg).is_zero()


def test_simple_monomial(heisenberg):
    a, b, _ = heisenberg.gens()
    el = parse_element("a*b", heisenberg)
    assert el == a * b


def test_normalization_signs(heisenberg):
    a, b, c = heisenberg.gens()
    el = parse_element("b*a - 2/3*c*a", heisenberg)
    expected = -(a * b) + (a * c).scale(F(2, 3))
    assert el == expected


def test_rational_coefficients(heisenberg):
    a, _, _ = heisenberg.gens()
    assert parse_element("3/2*a", heisenberg) == a.scale(F(3, 2))
    assert parse_element("2*a - a", heisenberg) == a


def test_unit_constant(heisenberg):
    assert parse_element("1", heisenberg) == heisenberg.one()
    assert parse_element("5/7", heisenberg) == heisenberg.one().scale(F(5, 7))


def test_leading_minus(heisenberg):
    a, _, _ = heisenberg.gens()
    assert parse_element("-a", heisenberg) == -a


def test_whitespace_insensitive(heisenberg):
    a, b, _ = heisenberg.gens()
    assert parse_element("  a *   b ", heisenberg) == a * b


def test_unknown_generator(heisenberg):
    with pytest.raises(ParseError) as exc:
        parse_element("a*zz", heisenberg)
    assert exc.value.position > 0


def test_zero_denominator(heisenberg):
    with pytest.raises(ParseError):
        parse_element("1/0*a", heisenberg)


def test_malformed(heisenberg):
    for src in ("", "a +", "* a", "a b", "2//3*a"):
        with pytest.raises(ParseError):
            parse_element(src, heisenberg)


def test_roundtrip_random(heisenberg, rng):
    A = heisenberg
    for _ in range(40):
        k = rng.randint(0, 4)
        if k == 0:
            x = A.one().scale(F(rng.randint(-5, 5), rng.randint(1, 4)))
        else:
            x = rand_element(A, k, rng, density=0.7)
        assert parse_element(serialize_element(x), A) == x


def test_roundtrip_mixed_degrees(triple_witness, rng):
    A = triple_witness
    for _ in range(20):
        x = rand_element(A, 2, rng) + rand_element(A, 3, rng)
        assert parse_element(serialize_element(x), A) == x
