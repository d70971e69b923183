import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from schrodinger.parsing import ParseError, parse_scalar
from schrodinger.scalars import I, Scalar, gaussian_sqrt, simplify, sqrt_of, sstr


def _random_scalar(rng, zdot):
    q = lambda: Fraction(rng.randint(-9, 9), rng.randint(1, 5))
    return Scalar(q(), q(), q(), q(), zdot=zdot)


def test_field_axioms_on_seeded_triples():
    rng = random.Random(20240611)
    zdot = Fraction(2)  # S^2 = 2 is not a square in Q(i), so Q(i, S) is a field
    for _ in range(10_000):
        a, b, c = (_random_scalar(rng, zdot) for _ in range(3))
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a * b == b * a
        if a != 0:
            assert a * a.inverse() == 1


def test_i_and_s_square_correctly():
    S = Scalar.gen_s(3)
    assert I * I == -1
    assert S * S == 3
    assert (I * S) ** 2 == -3


def test_zero_divisor_reported_when_zdot_is_a_square():
    # with zdot = 4 the formal S satisfies (S - 2)(S + 2) = 0
    S = Scalar.gen_s(4)
    with pytest.raises(ZeroDivisionError):
        (S - 2).inverse()


def test_mixing_two_formal_roots_is_rejected():
    with pytest.raises(ValueError):
        Scalar.gen_s(2) + Scalar.gen_s(3)


def test_sqrt_of_prefers_gaussian_roots():
    assert sqrt_of(4) == 2
    assert sqrt_of(-1) == I
    assert sqrt_of(Fraction(9, 4)) == Fraction(3, 2)
    s = sqrt_of(2)
    assert s.has_s and s * s == 2


def test_gaussian_sqrt_of_2i():
    x, y = gaussian_sqrt(0, 2)
    z = Scalar(x, y)
    assert z * z == 2 * I


def test_parse_and_print_round_trip():
    zdot = Fraction(5)
    for text in ("1/2 + 3*I*S", "-7/3*S", "2 - I", "0"):
        x = parse_scalar(text, zdot)
        assert parse_scalar(sstr(x), zdot) == x


def test_rational_results_collapse_to_fraction():
    assert isinstance(simplify(Scalar(3)), Fraction)
    assert isinstance(parse_scalar("1/2 + 1/2"), Fraction)


def test_floats_are_refused():
    with pytest.raises(TypeError):
        Scalar(0.5)


def test_bad_scalar_text():
    with pytest.raises(ParseError):
        parse_scalar("S")  # no zdot to define S
    with pytest.raises(ParseError):
        parse_scalar("2 +")


@given(st.fractions(max_denominator=50), st.fractions(max_denominator=50))
def test_gaussian_inverse_property(p, q):
    z = Scalar(p, q)
    if z != 0:
        assert z * z.inverse() == 1
        assert z.inverse().inverse() == z
