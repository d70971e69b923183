from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from schrodinger.lie import E, F, H, Z, Generator, SchrodingerAlgebra
from schrodinger.uea import UEA, normal_order, reduce_central, triangular_order


def _matmul(a, b):
    return [[sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(len(b[0]))] for i in range(len(a))]


def _identity(d):
    return [[Fraction(int(i == j)) for j in range(d)] for i in range(d)]


def _evaluate(u):
    """Image of a UEA element in the matrix realization of s_n (an algebra map)."""
    alg = u.uea.algebra
    d = len(alg.matrix(E))
    out = [[Fraction(0)] * d for _ in range(d)]
    for mono, c in u.terms.items():
        m = _identity(d)
        for g, e in zip(u.uea.order, mono):
            for _ in range(e):
                m = _matmul(m, alg.matrix(g))
        out = [[out[i][j] + c * m[i][j] for j in range(d)] for i in range(d)]
    return out


def _word_matrix(alg, word):
    d = len(alg.matrix(E))
    m = _identity(d)
    for g in word:
        m = _matmul(m, alg.matrix(g))
    return m


def test_documented_products():
    U = UEA(SchrodingerAlgebra(1))
    assert str(U.parse("x(1) y(1)")) == "y(1) x(1) + z"
    assert str(U.parse("e f")) == "f e + h"
    assert str(U.parse("e f^2")) == "f^2 e + 2*f h - 2*f"


def test_reduction_by_central_charge():
    U = UEA(SchrodingerAlgebra(1))
    assert str(reduce_central(U.parse("x(1) y(1)"), 1)) == "y(1) x(1) + 1"
    assert reduce_central(U.parse("z^2 e"), 3) == U.reduced(3).parse("9 e")


def test_associativity_example():
    U = UEA(SchrodingerAlgebra(1))
    e, f, x = U.gen(E), U.gen(F), U.gen(Generator("x", 1))
    assert (e * f) * x == e * (f * x)


words = st.lists(st.sampled_from(["e", "f", "h", "x1", "y1", "x2", "y2", "s12", "z"]), max_size=5)


def _gens(alg, names):
    table = {"e": E, "f": F, "h": H, "z": Z, "x1": Generator("x", 1), "y1": Generator("y", 1),
             "x2": Generator("x", 2), "y2": Generator("y", 2), "s12": Generator("s", 1, 2)}
    return [table[w] for w in names]


@settings(max_examples=60, deadline=None)
@given(words)
def test_normal_form_agrees_with_matrix_oracle(names):
    alg = SchrodingerAlgebra(2)
    word = _gens(alg, names)
    assert _evaluate(normal_order(alg, word)) == _word_matrix(alg, word)


@settings(max_examples=40, deadline=None)
@given(words, words, words)
def test_associativity(a, b, c):
    alg = SchrodingerAlgebra(2)
    U = UEA(alg)
    A, B, C = (U.word(_gens(alg, w)) for w in (a, b, c))
    assert (A * B) * C == A * (B * C)


@settings(max_examples=30, deadline=None)
@given(words)
def test_triangular_order_gives_the_same_element(names):
    alg = SchrodingerAlgebra(2)
    word = _gens(alg, names)
    T = UEA(alg, triangular_order(alg)).word(word)
    assert _evaluate(T) == _word_matrix(alg, word)


def test_pbw_monomial_count():
    # number of monomials of degree <= d in m variables is C(m + d, d)
    from math import comb

    U = UEA(SchrodingerAlgebra(2))
    assert len(list(U.monomials(3))) == comb(len(U.order) - 1 + 3, 3)


def test_localized_products():
    U = UEA(SchrodingerAlgebra(1), localized=True)
    finv = U.finv()
    e, h, f = U.gen(E), U.gen(H), U.gen(F)
    x, y = U.gen(Generator("x", 1)), U.gen(Generator("y", 1))
    assert finv * f == U.one() and f * finv == U.one()
    # f^-1 e = e f^-1 + f^-1 h f^-1
    assert finv * e == e * finv + finv * h * finv
    # [f, x] = y, so x f^-1 = f^-1 x + f^-1 y f^-1
    assert x * finv == finv * x + finv * y * finv
    assert str(x * finv) == "f^-2 y(1) + f^-1 x(1)"
    assert (x * finv) * f == x


def test_negative_powers_need_localization():
    with pytest.raises(ValueError):
        UEA(SchrodingerAlgebra(1)).finv()


def test_bad_order_rejected():
    alg = SchrodingerAlgebra(1)
    with pytest.raises(ValueError):
        UEA(alg, alg.basis[:-1])
