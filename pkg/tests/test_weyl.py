from fractions import Fraction
from itertools import product

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from schrodinger.lie import E, F, H, Z, Generator, SchrodingerAlgebra
from schrodinger.scalars import sqrt_of
from schrodinger.uea import UEA
from schrodinger.weyl import (PolyModuleVector, TruncationError, WeylOperator, WeylRealization, act,
                              cyclic_span, is_cyclic, phi_injectivity_check, theta)

T = sympy.symbols("t1:4")


def _apply_sympy(op: WeylOperator, expr):
    """Apply a normal-ordered operator to a sympy expression by honest differentiation."""
    out = 0
    for (a, b), c in op.terms.items():
        term = expr
        for i, k in enumerate(b):
            if k:
                term = sympy.diff(term, T[i], k)
        for i, k in enumerate(a):
            term = term * T[i] ** k
        out += sympy.Rational(c.numerator, c.denominator) * term
    return sympy.expand(out)


def _test_functions(n):
    for exps in product(range(4), repeat=n):
        yield sympy.Mul(*[T[i] ** e for i, e in enumerate(exps)])


def test_documented_product():
    W = WeylOperator
    assert str(W.d(1, 1) ** 2 * W.t(1, 1) ** 2) == "t(1)^2 d(1)^2 + 4*t(1) d(1) + 2"


def test_canonical_commutation():
    W = WeylOperator
    for i in range(1, 4):
        for j in range(1, 4):
            assert W.d(3, i).commutator(W.t(3, j)) == W.const(3, int(i == j))


def _random_op(data, n):
    terms = {}
    for _ in range(data.draw(st.integers(1, 3))):
        a = tuple(data.draw(st.integers(0, 2)) for _ in range(n))
        b = tuple(data.draw(st.integers(0, 2)) for _ in range(n))
        terms[(a, b)] = Fraction(data.draw(st.integers(-3, 3)))
    return WeylOperator(n, terms)


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_product_matches_composition_of_differential_operators(data):
    n = 2
    A, B = _random_op(data, n), _random_op(data, n)
    AB = A * B
    for p in _test_functions(n):
        assert _apply_sympy(AB, p) == _apply_sympy(A, _apply_sympy(B, p))


def test_parse_round_trip():
    op = WeylOperator.parse(2, "t(1)^2 d(1) - 1/2 d(2)^2")
    assert str(op) == "t(1)^2 d(1) - 1/2*d(2)^2"
    assert WeylOperator.parse(2, str(op)) == op


def test_theta_of_h_is_euler_operator():
    for n in (1, 2, 3):
        R = WeylRealization(SchrodingerAlgebra(n), 1)
        want = WeylOperator.const(n, Fraction(-n, 2))
        for i in range(1, n + 1):
            want = want - WeylOperator.t(n, i) * WeylOperator.d(n, i)
        assert R.theta_gen(H) == want


def test_theta_images_of_generators():
    R = WeylRealization(SchrodingerAlgebra(2), 2)
    assert str(R.theta_gen(Generator("x", 1))) == "2*d(1)"
    assert str(R.theta_gen(Generator("y", 2))) == "2*t(2)"
    assert R.theta_gen(E) == WeylOperator.parse(2, "1/2 d(1)^2 + 1/2 d(2)^2")
    assert R.theta_gen(F) == WeylOperator.parse(2, "-1/2 t(1)^2 - 1/2 t(2)^2")
    assert R.theta_gen(Generator("s", 1, 2)) == WeylOperator.parse(2, "t(1) d(2) - t(2) d(1)")


def test_theta_rejects_central_element():
    with pytest.raises(ValueError):
        theta(Z, 1, n=1)


def test_theta_respects_xy_bracket_with_formal_root():
    s = sqrt_of(2)
    R = WeylRealization(SchrodingerAlgebra(1), s)
    x, y = R.theta_gen(Generator("x", 1)), R.theta_gen(Generator("y", 1))
    assert x.commutator(y) == WeylOperator.const(1, 2)


def test_theta_is_multiplicative_on_uea():
    alg = SchrodingerAlgebra(2)
    R = WeylRealization(alg, 1)
    U = R.reduced_uea()
    u = U.parse("e f x(1) y(2) s(1,2)")
    v = U.parse("h^2 y(1) - 3 x(2)")
    assert R.theta_uea(u * v) == R.theta_uea(u) * R.theta_uea(v)


def test_theta_uea_refuses_other_charges():
    alg = SchrodingerAlgebra(1)
    R = WeylRealization(alg, 1)
    with pytest.raises(ValueError):
        R.theta_uea(UEA(alg).parse("z"))
    with pytest.raises(ValueError):
        R.theta_uea(UEA(alg).reduced(4).parse("e"))


def test_phi_on_heisenberg_and_sl2():
    R = WeylRealization(SchrodingerAlgebra(1), 1)
    assert str(R.phi_gen(E)) == "1/2*1 (x) d(1)^2 + e (x) 1"
    assert not R.phi_gen(Generator("x", 1)).left_has_heisenberg()


@pytest.mark.parametrize("n,s", [(1, 1), (2, 1), (1, 2)])
def test_phi_injective_low_degree(n, s):
    rep = phi_injectivity_check(3, n, s)
    assert rep["injective"] and rep["rank"] == rep["monomials"]


def test_polynomial_module_action():
    v = PolyModuleVector("poly", 2, {(2, 1): Fraction(1)})
    d1 = WeylOperator.d(2, 1)
    assert act(d1, v).coeffs == {(1, 1): 2}
    assert act(d1 ** 3, v).coeffs == {}


def test_twisted_exponents_follow_falling_factorials():
    lam = Fraction(1, 2)
    v = PolyModuleVector("twisted", 1, {(0,): Fraction(1)}, lam, window=12)
    out = act(WeylOperator.d(1, 1) ** 2, v)
    assert out.coeffs == {(-2,): lam * (lam - 1)}


def test_quotient_module_kills_polynomial_part():
    v = PolyModuleVector("quotient", 1, {(-1,): Fraction(1)}, window=12)
    assert not act(WeylOperator.t(1, 1), v)  # t * t^-1 = 1 lies in C[t]
    assert act(WeylOperator.d(1, 1), v).coeffs == {(-2,): -1}


def test_truncation_raises_instead_of_dropping():
    v = PolyModuleVector("twisted", 1, {(12,): Fraction(1)}, Fraction(1, 3), window=12)
    with pytest.raises(TruncationError):
        act(WeylOperator.t(1, 1), v)


def test_invalid_module_vectors():
    with pytest.raises(ValueError):
        PolyModuleVector("twisted", 1, {}, Fraction(2))
    with pytest.raises(ValueError):
        PolyModuleVector("quotient", 1, {(0,): 1})
    with pytest.raises(ValueError):
        PolyModuleVector("twisted", 2, {}, Fraction(1, 2))


def test_cyclic_from_every_basis_vector():
    for key in [(-12,), (0,), (5,), (12,)]:
        v = PolyModuleVector("twisted", 1, {key: Fraction(1)}, Fraction(1, 2), window=12)
        assert is_cyclic(v)
    assert cyclic_span(PolyModuleVector("poly", 1, {(4,): 1}, window=8)) == 9


def test_cyclic_from_vectors_with_wide_support():
    # t pushes the top term out of the window, so the weight components must be separated first
    v = PolyModuleVector("twisted", 1, {(-7,): Fraction(5, 2), (11,): Fraction(1, 2), (8,): Fraction(5)},
                         Fraction(1, 2), window=12)
    assert is_cyclic(v)
    assert cyclic_span(PolyModuleVector("poly", 1, {(0,): 1, (8,): 3}, window=8)) == 9


def test_quotient_and_polynomial_spans():
    v = PolyModuleVector("quotient", 1, {(-1,): Fraction(1)}, window=6)
    assert is_cyclic(v)
    # d brings t^3 down to 1, which then generates every polynomial in the window
    assert cyclic_span(PolyModuleVector("poly", 1, {(3,): 1}, window=6)) == 7
