from fractions import Fraction

import pytest

from schrodinger.lie import E, F, H, Z, Generator, SchrodingerAlgebra
from schrodinger.localization import (ad_f, binom, conjugate_by_f, gamma, gamma_closed_form, gamma_element,
                                      gamma_properties_check, gamma_series, localized_multiply,
                                      localized_uea)
from schrodinger.modules import sl2_dense, so_module, zero_charge_module
from schrodinger.modules.weight import apply_localized
from schrodinger.scalars import Scalar, sqrt_of
from schrodinger.uea import UEA

B_VALUES = [Fraction(1, 2), Fraction(-2, 3), Fraction(3), Fraction(-1), Fraction(5, 4)]


def test_generalized_binomial():
    assert binom(Fraction(1, 2), 2) == Fraction(-1, 8)
    assert binom(5, 2) == 10
    assert binom(3, 5) == 0
    assert binom(Fraction(-1), 3) == -1


def test_ad_f_cubed_vanishes_on_generators():
    loc = localized_uea(3)
    for g in loc.algebra.basis:
        u = loc.gen(g)
        assert not ad_f(ad_f(ad_f(u)))


def test_closed_forms_from_the_series():
    n = 2
    loc = localized_uea(n)
    b = Fraction(1, 2)
    finv = loc.finv()
    want_e = loc.gen(E) + (loc.one() * (b * (1 - b)) - loc.gen(H) * b) * finv
    assert gamma(E, b, n) == want_e
    for i in (1, 2):
        x, y = Generator("x", i), Generator("y", i)
        assert gamma(x, b, n) == loc.gen(x) + loc.gen(y) * finv * b
        assert gamma(y, b, n) == loc.gen(y)
    assert gamma(H, b, n) == loc.gen(H) + 2 * b
    assert gamma(F, b, n) == loc.gen(F)
    assert gamma(Z, b, n) == loc.gen(Z)
    assert gamma(Generator("s", 1, 2), b, n) == loc.gen(Generator("s", 1, 2))


def test_gamma_zero_is_identity():
    loc = localized_uea(2)
    for g in loc.algebra.basis:
        assert gamma(g, 0, 2) == loc.gen(g)


def test_gamma_one_of_e_is_conjugation():
    loc = localized_uea(1)
    g1 = gamma(E, 1, 1)
    assert g1 == loc.gen(E) - loc.gen(H) * loc.finv()
    assert g1 == loc.gen(F) * loc.gen(E) * loc.finv()


def test_gamma_of_h_differences():
    loc = localized_uea(1)
    for b, b2 in [(Fraction(1, 2), Fraction(-3)), (2, 7)]:
        assert gamma(H, b, 1) - gamma(H, b2, 1) == loc.one() * (2 * (b - b2))


@pytest.mark.parametrize("b", B_VALUES)
def test_properties_at_several_parameters(b):
    rep = gamma_properties_check(b, Fraction(1, 3), 2)
    assert rep["passed"], rep


def test_properties_with_irrational_parameter():
    b = Scalar(Fraction(1, 2), 0, 1, 0, zdot=2)
    assert gamma_properties_check(b, Fraction(1, 5), 1)["passed"]


def test_integer_gamma_on_degree_two_monomials():
    U = UEA(SchrodingerAlgebra(2))
    for m in U.monomials(2):
        u = U.element({m: Fraction(1)})
        assert gamma_element(u, -2) == conjugate_by_f(u, -2)


def test_series_agrees_with_multiplicative_extension():
    loc = localized_uea(1)
    u = loc.parse("e x(1) h - 2 f y(1) e")
    b = Fraction(3, 7)
    assert gamma_series(u, b) == gamma_element(u, b)


def test_localized_multiply_checks_rank():
    with pytest.raises(ValueError):
        localized_multiply(localized_uea(1).one(), localized_uea(2).one())


def _ef_eigen_setup(casimir):
    M = zero_charge_module(so_module("trivial", 1), sl2_dense(Fraction(1, 3), casimir), -8, 8)
    k = 0
    lam = M.weight(k)
    a = (casimir - (lam - 1) ** 2) / 4  # ef acts on v_lam by this scalar
    return M, k, lam, a


@pytest.mark.parametrize("casimir", [Fraction(9), Fraction(2)])
def test_gamma_e_f_kills_vector_at_quadratic_root(casimir):
    M, k, lam, a = _ef_eigen_setup(casimir)
    loc = localized_uea(1)
    # a + b(1 - b - lam) = 0  <=>  b^2 + (lam - 1) b - a = 0, discriminant = casimir
    root = sqrt_of(casimir)
    for sign in (1, -1):
        b = (-(lam - 1) + sign * root) / 2
        assert a + b * (1 - b - lam) == 0
        op = gamma(E, b, 1) * loc.gen(F)
        target, vec = apply_localized(M, op, k, {0: Fraction(1)})
        assert target == k and not vec
    # away from the roots the same vector survives
    op = gamma(E, Fraction(1, 7), 1) * loc.gen(F)
    assert apply_localized(M, op, k, {0: Fraction(1)})[1]
