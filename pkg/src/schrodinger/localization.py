"""Localization of U(s_n) at the powers of f and the twisting automorphisms gamma_b.

Localized elements are :class:`~schrodinger.uea.UEAElement` objects of a
``UEA(..., localized=True)``; the f-slot of a monomial may be negative.
"""

from __future__ import annotations

import time
from fractions import Fraction
from functools import lru_cache

from .lie import E, F, H, Z, Generator, SchrodingerAlgebra
from .linalg import add_into
from .scalars import Scalar, as_fraction, sstr
from .uea import UEA, UEAElement

__all__ = [
    "ad_f",
    "binom",
    "gamma",
    "gamma_closed_form",
    "gamma_element",
    "gamma_properties_check",
    "gamma_series",
    "localized_multiply",
    "localized_uea",
]

_SERIES_CAP = 64


@lru_cache(maxsize=None)
def _localized(n: int) -> UEA:
    return UEA(SchrodingerAlgebra(n), localized=True)


def localized_uea(n_or_algebra) -> UEA:
    n = n_or_algebra if isinstance(n_or_algebra, int) else n_or_algebra.n
    return _localized(n)


def binom(b, j: int):
    """b(b-1)...(b-j+1)/j! for any scalar b."""
    out = Fraction(1)
    for r in range(j):
        out = out * (b - r) / (r + 1)
    return out


def localized_multiply(a: UEAElement, b: UEAElement) -> UEAElement:
    if not (a.uea.localized and b.uea.localized):
        raise ValueError("both factors must live in the localized algebra")
    if a.uea.algebra.n != b.uea.algebra.n:
        raise ValueError(f"mismatched rank: n={a.uea.algebra.n} vs n={b.uea.algebra.n}")
    return a * b


def _as_localized(u, n: int | None = None) -> UEAElement:
    if isinstance(u, Generator):
        return localized_uea(n).gen(u)
    if isinstance(u, UEAElement):
        if u.uea.localized:
            return u
        loc = localized_uea(u.uea.algebra)
        if u.uea.order != loc.order or u.uea.zdot is not None:
            raise ValueError("only default-ordered, unreduced elements embed in the localization")
        return loc.element(u.terms)
    return localized_uea(u.algebra).from_lie(u)


def ad_f(u: UEAElement) -> UEAElement:
    fu = u.uea.gen(F)
    return fu * u - u * fu


def gamma_series(u, b, n: int | None = None) -> UEAElement:
    """sum_j binom(b, j) (ad f)^j(u) f^-j, summed until the ad-f powers vanish."""
    u = _as_localized(u, n)
    loc = u.uea
    out = loc.zero()
    term = u
    for j in range(_SERIES_CAP):
        if not term:
            return out
        c = binom(b, j)
        if c:
            out = out + term * loc.f_power(-j) * c
        term = ad_f(term)
    raise ArithmeticError("ad f did not terminate on this element")


def gamma(g: Generator, b, n: int) -> UEAElement:
    return gamma_series(g, b, n)


def gamma_element(u, b, n: int | None = None) -> UEAElement:
    """gamma_b extended multiplicatively from its values on generators."""
    u = _as_localized(u, n)
    loc = u.uea
    images = {}
    out: dict = {}
    for m, c in u.terms.items():
        acc = loc.one()
        for g, e in zip(loc.order, m):
            if e == 0:
                continue
            if g == F:
                acc = acc * loc.f_power(e)
                continue
            img = images.get(g)
            if img is None:
                img = images[g] = gamma_series(g, b, loc.algebra.n)
            for _ in range(e):
                acc = acc * img
        add_into(out, acc.terms, c)
    return loc.element(out)


def gamma_closed_form(g: Generator, b, n: int) -> UEAElement:
    loc = localized_uea(n)
    gen = loc.gen
    finv = loc.finv()
    if g == E:
        return gen(E) + (loc.one() * (b * (1 - b)) - gen(H) * b) * finv
    if g.kind == "x":
        return gen(g) + gen(Generator("y", g.i)) * finv * b
    if g == H:
        return gen(H) + loc.one() * (2 * b)
    return gen(g)


def conjugate_by_f(u, k: int, n: int | None = None) -> UEAElement:
    u = _as_localized(u, n)
    loc = u.uea
    return loc.f_power(k) * u * loc.f_power(-k)


def _is_integer(b) -> bool:
    q = as_fraction(b)
    return q is not None and q.denominator == 1


def gamma_properties_check(b, b2, n: int, sample_degree: int = 2) -> dict:
    """Every algebraic property of gamma_b checked exactly on the generators of s_n."""
    start = time.perf_counter()
    alg = SchrodingerAlgebra(n)
    loc = localized_uea(n)
    checks: dict[str, list] = {}

    def record(name, ok, detail=None):
        checks.setdefault(name, [])
        if not ok:
            checks[name].append(detail)

    for g in alg.basis:
        u = loc.gen(g)
        record("ad_f_cubed_vanishes", not ad_f(ad_f(ad_f(u))), str(g))
        gb = gamma_series(g, b, n)
        record("closed_forms", gb == gamma_closed_form(g, b, n), f"{g}: {gb}")
        record("cocycle", gamma_element(gamma_series(g, b2, n), b) == gamma_series(g, b + b2, n), str(g))
        record("inverse", gamma_element(gamma_series(g, -b, n), b) == u, str(g))
        record("zero_is_identity", gamma_series(g, 0, n) == u, str(g))
    for a in alg.basis:
        for c in alg.basis:
            lhs = gamma_element(loc.gen(a) * loc.gen(c) - loc.gen(c) * loc.gen(a), b)
            ga, gc = gamma_series(a, b, n), gamma_series(c, b, n)
            record("bracket_compatible", lhs == ga * gc - gc * ga, f"({a},{c})")
    if _is_integer(b):
        k = int(as_fraction(b))
        for g in alg.basis:
            record("integer_conjugation", gamma_series(g, b, n) == conjugate_by_f(g, k, n), str(g))
        for m in UEA(alg).monomials(sample_degree):
            u = loc.element({m: Fraction(1)})
            record("integer_conjugation", gamma_element(u, b) == conjugate_by_f(u, k), loc.format_monomial(m))
    shift = gamma_series(H, b, n) - gamma_series(H, b2, n)
    record("h_shift", shift == loc.one() * (2 * (b - b2)), str(shift))
    results = [{"check": name, "passed": not bad, "failures": bad[:5]} for name, bad in checks.items()]
    return {
        "n": n,
        "b": sstr(b),
        "b_prime": sstr(b2),
        "passed": all(r["passed"] for r in results),
        "checks": results,
        "seconds": round(time.perf_counter() - start, 3),
    }


def twist_module(M, b):
    """M^{gamma_b}: same spaces, g acting as gamma_b(g); needs f invertible on the window."""
    from .modules.weight import twist_module as _twist

    return _twist(M, b)


__all__ += ["conjugate_by_f", "twist_module", "Scalar", "Z"]
