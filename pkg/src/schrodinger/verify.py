"""Checks that combine several layers, and the aggregate run behind ``verify-all``."""

from __future__ import annotations

import random
import time
from fractions import Fraction

from .lie import E, F, H, Z, SchrodingerAlgebra, verify_structure
from .localization import gamma_properties_check
from .modules import (nilpotency_probe, simple_quotient, so_module, verify_verma_factorization, verma)
from .scalars import sqrt_of, sstr
from .uea import UEA
from .weyl import WeylOperator, WeylRealization

__all__ = [
    "phi_homomorphism_check",
    "random_word_check",
    "run_all",
    "theta_homomorphism_check",
    "zero_charge_witness",
]


def _pairs(alg: SchrodingerAlgebra):
    gens = [g for g in alg.basis if g != Z]
    return [(a, b) for a in gens for b in gens]


def theta_homomorphism_check(n: int, s, algebra: SchrodingerAlgebra | None = None) -> dict:
    """theta([a,b]) == [theta(a), theta(b)] on every pair of non-central basis elements; z -> s^2."""
    alg = algebra or SchrodingerAlgebra(n)
    R = WeylRealization(alg, s)
    bad = []
    pairs = _pairs(alg)
    for a, b in pairs:
        br = alg.bracket_basis(a, b)
        want = WeylOperator(n)
        for g, c in br.items():
            want = want + (WeylOperator.const(n, R.zdot) if g == Z else R.theta_gen(g)) * c
        got = R.theta_gen(a).commutator(R.theta_gen(b))
        if got != want:
            bad.append({"pair": [str(a), str(b)], "expected": str(want), "got": str(got)})
    return {"n": n, "s": sstr(s), "zdot": sstr(R.zdot), "pairs": len(pairs), "passed": not bad,
            "failures": bad[:5]}


def phi_homomorphism_check(n: int, s, algebra: SchrodingerAlgebra | None = None) -> dict:
    alg = algebra or SchrodingerAlgebra(n)
    R = WeylRealization(alg, s)
    bad = []
    pairs = _pairs(alg)
    for a, b in pairs:
        want = R.one() * 0
        for g, c in alg.bracket_basis(a, b).items():
            want = want + (R.one() * R.zdot if g == Z else R.phi_gen(g)) * c
        pa, pb = R.phi_gen(a), R.phi_gen(b)
        got = pa * pb - pb * pa
        if got != want:
            bad.append({"pair": [str(a), str(b)], "expected": str(want), "got": str(got)})
    return {"n": n, "s": sstr(s), "zdot": sstr(R.zdot), "pairs": len(pairs), "passed": not bad,
            "failures": bad[:5]}


def random_word_check(n: int, s, seed: int, samples: int = 20, max_len: int = 4) -> dict:
    """theta(u v) == theta(u) theta(v) for random words u, v, normal-ordered in the reduced algebra."""
    rng = random.Random(seed)
    alg = SchrodingerAlgebra(n)
    R = WeylRealization(alg, s)
    U = UEA(alg).reduced(R.zdot)
    gens = [g for g in alg.basis if g != Z]
    bad = []
    for _ in range(samples):
        u = U.word([rng.choice(gens) for _ in range(rng.randint(0, max_len))], rng.randint(-3, 3) or 1)
        v = U.word([rng.choice(gens) for _ in range(rng.randint(0, max_len))], Fraction(rng.randint(1, 5), 2))
        if R.theta_uea(u * v) != R.theta_uea(u) * R.theta_uea(v):
            bad.append({"u": str(u), "v": str(v)})
    return {"n": n, "seed": seed, "samples": samples, "passed": not bad, "failures": bad[:5]}


def zero_charge_witness(n: int, lam, depth: int, V_tag: str = "trivial") -> dict:
    """In the simple quotient of M(V, lam, 0) every x(i), y(i) matrix vanishes."""
    Q = simple_quotient(verma(so_module(V_tag, n), lam, Fraction(0), depth))
    nonzero = [str(g) for g in Q.algebra.x_gens + Q.algebra.y_gens
               if any(col for cols in Q.actions[g].values() for col in cols)]
    return {"n": n, "V": V_tag, "lambda": sstr(lam), "depth": depth,
            "dims": {str(k): Q.dims[k] for k in Q.offsets()},
            "passed": not nonzero, "nonzero_generators": nonzero}


def _timed(name, fn, *args, **kwargs):
    start = time.perf_counter()
    try:
        rep = fn(*args, **kwargs)
        passed = bool(rep["passed"]) if isinstance(rep, dict) else bool(rep.passed)
        detail = rep if isinstance(rep, dict) else rep.as_dict()
    except Exception as exc:  # a crash is reported as a failed invariant
        passed, detail = False, {"error": f"{type(exc).__name__}: {exc}"}
    return {"invariant": name, "passed": passed, "seconds": round(time.perf_counter() - start, 3),
            "detail": detail}


def run_all(n: int, zdot, depth: int, seed: int = 0, inject_fault: bool = False, s=None) -> dict:
    """Every structural check at one (n, zdot, depth); ``inject_fault`` corrupts [e, f]."""
    overrides = {(E, F): {H: -1}} if inject_fault else None
    alg = SchrodingerAlgebra(n, overrides)
    if s is None:
        s = sqrt_of(zdot)
    results = [_timed("structure", verify_structure, n, alg)]
    if zdot:
        results.append(_timed("theta_homomorphism", theta_homomorphism_check, n, s, alg))
        results.append(_timed("phi_homomorphism", phi_homomorphism_check, n, s, alg))
        results.append(_timed("random_words", random_word_check, n, s, seed))
        if n <= 2:
            results.append(_timed("phi_injectivity", WeylRealization(alg, s).injectivity_check, min(depth, 3)))
        results.append(_timed("gamma_properties", gamma_properties_check, Fraction(1, 2), Fraction(1, 3), n))
        for lam in (Fraction(-n, 2), Fraction(1, 3), Fraction(2)):
            results.append(_timed(f"verma_factorization(lambda={sstr(lam)})", verify_verma_factorization,
                                  so_module("trivial", n), lam, zdot, depth))
        M = verma(so_module("trivial", n), Fraction(1, 3), zdot, depth)
        results.append(_timed("verma_bracket_fidelity", M.bracket_fidelity))
        results.append({"invariant": "e_locally_nilpotent_on_verma",
                        "passed": nilpotency_probe(M, E) == "locally-nilpotent", "seconds": 0.0,
                        "detail": {}})
        results.append({"invariant": "f_injective_on_verma",
                        "passed": nilpotency_probe(M, F) == "injective", "seconds": 0.0, "detail": {}})
    else:
        results.append(_timed("zero_charge_witness", zero_charge_witness, n, Fraction(1, 2), depth))
        results.append(_timed("gamma_properties", gamma_properties_check, Fraction(1, 2), Fraction(1, 3), n))
    return {
        "config": {"n": n, "zdot": sstr(zdot), "s": sstr(s), "depth": depth, "seed": seed,
                   "inject_fault": inject_fault},
        "passed": all(r["passed"] for r in results),
        "failing": [r["invariant"] for r in results if not r["passed"]],
        "results": results,
    }
