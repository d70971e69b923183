from fractions import Fraction

import pytest

from schrodinger.lie import E, F, H, Z, Generator, SchrodingerAlgebra, bracket, verify_structure


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_structure_is_sound(n):
    rep = verify_structure(n)
    assert rep.passed, rep.first_counterexample
    d = SchrodingerAlgebra(n).basis
    assert rep.pairs_checked == len(d) ** 2
    assert rep.triples_checked == len(d) ** 3


def test_dimension_formula():
    for n in range(1, 6):
        assert len(SchrodingerAlgebra(n).basis) == n * (n - 1) // 2 + 2 * n + 4


def test_basic_brackets():
    alg = SchrodingerAlgebra(2)
    g = alg.gen
    assert bracket(g("e"), g("f")) == g("h")
    assert bracket(g("h"), g("e")) == 2 * g("e")
    assert bracket(g("x", 1), g("y", 1)) == g("z")
    assert bracket(g("x", 1), g("y", 2)) == alg.zero()
    assert bracket(g("e"), g("y", 2)) == g("x", 2)
    assert bracket(g("f"), g("x", 1)) == g("y", 1)
    assert bracket(g("s", 1, 2), g("x", 2)) == g("x", 1)
    assert bracket(g("s", 1, 2), g("x", 1)) == -g("x", 2)


def test_so3_relation():
    alg = SchrodingerAlgebra(3)
    assert bracket(alg.gen("s", 1, 2), alg.gen("s", 2, 3)) == alg.gen("s", 1, 3)


def test_parse_and_print():
    alg = SchrodingerAlgebra(2)
    a = alg.parse("2*e - 3*x(1) + s(1,2)")
    assert a == 2 * alg.gen("e") - 3 * alg.gen("x", 1) + alg.gen("s", 1, 2)
    assert alg.parse(str(a)) == a


def test_mismatched_rank_rejected():
    with pytest.raises(ValueError):
        bracket(SchrodingerAlgebra(1).gen("e"), SchrodingerAlgebra(2).gen("e"))


def test_bad_generator_names():
    alg = SchrodingerAlgebra(2)
    with pytest.raises(ValueError):
        alg.gen("x", 3)
    with pytest.raises(ValueError):
        alg.gen("s", 1, 1)
    with pytest.raises(ValueError):
        alg.gen("s", 1, 3)
    assert alg.gen("s", 2, 1) == -alg.gen("s", 1, 2)


def test_fault_injection_is_caught_by_both_oracles():
    alg = SchrodingerAlgebra(2, {(E, F): {H: -1}})
    rep = verify_structure(2, alg)
    assert not rep.passed
    kinds = {f["check"] for f in rep.failures}
    assert kinds == {"matrix_oracle", "jacobi"}


def test_tau_is_an_automorphism_of_order_four():
    alg = SchrodingerAlgebra(3)
    els = [alg.element({g: Fraction(1)}) for g in alg.basis]
    for a in els:
        for b in els:
            assert alg.tau(bracket(a, b)) == bracket(alg.tau(a), alg.tau(b))
    for a in els:
        t2 = alg.tau(alg.tau(a))
        g = next(iter(a.terms))
        assert t2 == (-a if g.kind in "xy" else a)
        assert alg.tau(alg.tau(t2)) == a


def test_tau_values():
    alg = SchrodingerAlgebra(1)
    g = alg.gen
    assert alg.tau(g("e")) == -g("f")
    assert alg.tau(g("h")) == -g("h")
    assert alg.tau(g("x", 1)) == -g("y", 1)
    assert alg.tau(g("y", 1)) == g("x", 1)
    assert alg.tau(g("z")) == g("z")


def test_matrix_realization_is_faithful_on_basis():
    alg = SchrodingerAlgebra(3)
    for g in alg.basis:
        assert alg.decode_matrix(alg.matrix(g)) == alg.element({g: Fraction(1)})


def test_generator_names():
    assert str(Generator("s", 1, 2)) == "s(1,2)"
    assert str(Generator("x", 3)) == "x(3)"
    assert str(Z) == "z"


def test_reduced_basis_is_gauss_jordan():
    from schrodinger.linalg import reduced_basis

    rows = reduced_basis([{0: 1, 1: 2}, {0: 1, 1: 1, 2: 3}])
    pivots = [next(iter(r)) for r in rows]
    for p, r in zip(pivots, rows):
        assert r[p] == 1
        assert all(o.get(p, 0) == 0 for o in rows if o is not r)
