"""Universal enveloping algebra U(s_n) in PBW normal form.

Monomials are exponent tuples over a fixed ordering of the basis.  The
default ordering is ``s(i,j)..., f, h, e, y(1..n), x(1..n), z``; other
orderings (e.g. the triangular one used to induce Verma modules) are
supported because the straightening rule does not depend on it.

Straightening is the single swap rule ``g a = a g + [g, a]``, memoized on
``(generator, ordered monomial)``.  Passing ``zdot`` builds the quotient by
``z - zdot``; ``localized=True`` allows negative powers of ``f`` (the Ore
localization at ``{f^k}``) using ``g f^-1 = f^-1 g + f^-1 [f, g] f^-1``.
"""

from __future__ import annotations

import threading
from fractions import Fraction
from itertools import combinations_with_replacement

from .lie import F, Z, Generator, LieElement, SchrodingerAlgebra
from .linalg import add_into
from .scalars import Scalar, sstr

__all__ = ["UEA", "UEAElement", "normal_order", "reduce_central", "triangular_order"]


def triangular_order(algebra: SchrodingerAlgebra) -> list[Generator]:
    """``f, y(1..n) | s(i,j)..., h, z | e, x(1..n)``: lowering, Cartan, raising."""
    return algebra.negative + algebra.cartan + algebra.positive


class UEA:
    def __init__(self, algebra: SchrodingerAlgebra, order=None, zdot=None, localized: bool = False,
                 cache_degree: int = 12):
        self.algebra = algebra
        self.order = list(order) if order is not None else list(algebra.basis)
        if sorted(self.order) != sorted(algebra.basis):
            raise ValueError("order must be a permutation of the basis")
        self.pos = {g: k for k, g in enumerate(self.order)}
        self.D = len(self.order)
        self.zdot = zdot
        self.localized = localized
        self.cache_degree = cache_degree
        self.z_pos = self.pos[Z]
        self.f_pos = self.pos[F]
        if localized:
            for g in self.order[: self.f_pos]:
                if algebra.bracket_basis(g, F):
                    raise ValueError(f"{g} precedes f in the order but does not commute with it")
        self._br = {}
        for a in self.order:
            for b in self.order:
                val = algebra.bracket_basis(a, b)
                if val:
                    self._br[(self.pos[a], self.pos[b])] = [(self.pos[g], c) for g, c in val.items()]
        self._memo: dict = {}
        self._lock = threading.Lock()
        self._reduced: dict = {}
        self.unit = (0,) * self.D

    def __repr__(self):
        red = "" if self.zdot is None else f", zdot={sstr(self.zdot)}"
        loc = ", localized" if self.localized else ""
        return f"UEA(n={self.algebra.n}{red}{loc})"

    @property
    def reduced_charge(self):
        return self.zdot

    def compatible(self, other: UEA) -> bool:
        return (self.algebra.n == other.algebra.n and self.order == other.order
                and self.zdot == other.zdot and self.localized == other.localized)

    def reduced(self, zdot) -> UEA:
        """The same algebra modulo ``z - zdot``."""
        key = sstr(zdot)
        if key not in self._reduced:
            self._reduced[key] = UEA(self.algebra, self.order, zdot, self.localized, self.cache_degree)
        return self._reduced[key]

    # straightening core

    def _bump(self, mono, k, d):
        m = list(mono)
        m[k] += d
        return tuple(m)

    def left_mul(self, g: int, mono: tuple) -> dict:
        """Normal form of ``order[g] * mono`` for an ordered monomial ``mono``."""
        key = (g, mono)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        res = self._straighten(g, mono)
        if sum(abs(e) for e in mono) <= self.cache_degree:
            with self._lock:
                self._memo.setdefault(key, res)
        return res

    def _straighten(self, g: int, mono: tuple) -> dict:
        if g == self.z_pos:
            if self.zdot is None:
                return {self._bump(mono, g, 1): Fraction(1)}
            return {mono: self.zdot} if self.zdot else {}
        p = next((k for k, e in enumerate(mono) if e), None)
        if p is None or g <= p:
            return {self._bump(mono, g, 1): Fraction(1)}
        out: dict = {}
        if mono[p] > 0:
            rest = self._bump(mono, p, -1)
            # g a R = a (g R) + [g, a] R
            for m2, c in self.left_mul(g, rest).items():
                add_into(out, self.left_mul(p, m2), c)
            for r, c in self._br.get((g, p), ()):
                add_into(out, self.left_mul(r, rest), c)
        else:
            # p is f with a negative exponent: g f^-1 R = f^-1 (g R) + f^-1 ([f, g] f^-1 R)
            rest = self._bump(mono, p, 1)
            for m2, c in self.left_mul(g, rest).items():
                add_into(out, {self._bump(m2, p, -1): c})
            for r, c in self._br.get((p, g), ()):
                for m2, c2 in self.left_mul(r, mono).items():
                    add_into(out, {self._bump(m2, p, -1): c * c2})
        return out

    def left_mul_terms(self, g: int, terms: dict) -> dict:
        out: dict = {}
        for m, c in terms.items():
            add_into(out, self.left_mul(g, m), c)
        return out

    def mul_terms(self, a: dict, b: dict) -> dict:
        out: dict = {}
        for ma, ca in a.items():
            cur = b
            for k in range(self.D - 1, -1, -1):
                e = ma[k]
                if e > 0:
                    for _ in range(e):
                        cur = self.left_mul_terms(k, cur)
                elif e < 0:
                    cur = {self._bump(m, k, e): c for m, c in cur.items()}
            add_into(out, cur, ca)
        return out

    # constructors

    def element(self, terms: dict) -> UEAElement:
        return UEAElement(self, terms)

    def one(self) -> UEAElement:
        return UEAElement(self, {self.unit: Fraction(1)})

    def zero(self) -> UEAElement:
        return UEAElement(self, {})

    def gen(self, g: Generator) -> UEAElement:
        if g == Z and self.zdot is not None:
            return self.one() * self.zdot
        return UEAElement(self, {self._bump(self.unit, self.pos[g], 1): Fraction(1)})

    def finv(self) -> UEAElement:
        if not self.localized:
            raise ValueError("f^-1 only exists in the localized algebra")
        return UEAElement(self, {self._bump(self.unit, self.f_pos, -1): Fraction(1)})

    def f_power(self, k: int) -> UEAElement:
        if k < 0 and not self.localized:
            raise ValueError("negative powers of f need the localized algebra")
        return UEAElement(self, {self._bump(self.unit, self.f_pos, k): Fraction(1)})

    def from_lie(self, a: LieElement) -> UEAElement:
        out: dict = {}
        for g, c in a.terms.items():
            add_into(out, self.gen(g).terms, c)
        return UEAElement(self, out)

    def word(self, gens, coef=1) -> UEAElement:
        """Normal form of the product ``coef * gens[0] * gens[1] * ...``."""
        terms = {self.unit: Fraction(1) * coef} if coef else {}
        for g in reversed(list(gens)):
            if g == Z and self.zdot is not None:
                terms = {m: c * self.zdot for m, c in terms.items() if c * self.zdot}
            else:
                terms = self.left_mul_terms(self.pos[g], terms)
        return UEAElement(self, terms)

    def monomial(self, exps: dict) -> UEAElement:
        m = [0] * self.D
        for g, e in exps.items():
            m[self.pos[g]] = e
        return UEAElement(self, {tuple(m): Fraction(1)})

    def parse(self, text: str) -> UEAElement:
        from .parsing import parse_expression

        def resolve(name, args):
            if name == "finv" and not args:
                return self.finv()
            return self.from_lie(self.algebra.gen(name, *args))

        return parse_expression(text, resolve, self.one)

    def monomials(self, max_degree: int, gens=None):
        """All ordered monomials of total degree <= max_degree in ``gens`` (default: all but z)."""
        gens = [g for g in self.order if g != Z] if gens is None else list(gens)
        idx = [self.pos[g] for g in gens]
        for d in range(max_degree + 1):
            for combo in combinations_with_replacement(idx, d):
                m = [0] * self.D
                for k in combo:
                    m[k] += 1
                yield tuple(m)

    def format_monomial(self, mono: tuple) -> str:
        parts = []
        for g, e in zip(self.order, mono):
            if e == 0:
                continue
            parts.append(str(g) if e == 1 else f"{g}^{e}")
        return " ".join(parts) if parts else "1"


class UEAElement:
    """Linear combination of PBW monomials; immutable."""

    __slots__ = ("uea", "terms")

    def __init__(self, uea: UEA, terms: dict):
        self.uea = uea
        self.terms = {m: c for m, c in terms.items() if c}

    @property
    def reduced(self):
        return self.uea.zdot

    def _other(self, other):
        if isinstance(other, UEAElement):
            if not self.uea.compatible(other.uea):
                raise ValueError("mismatched enveloping algebras (rank, order or reduction)")
            return other
        if isinstance(other, (int, Fraction, Scalar)):
            return self.uea.one() * other
        return None

    def __add__(self, other):
        other = self._other(other)
        if other is None:
            return NotImplemented
        out = dict(self.terms)
        add_into(out, other.terms)
        return UEAElement(self.uea, out)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._other(other)
        if other is None:
            return NotImplemented
        out = dict(self.terms)
        add_into(out, other.terms, -1)
        return UEAElement(self.uea, out)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return UEAElement(self.uea, {m: -c for m, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, UEAElement):
            self._other(other)
            return UEAElement(self.uea, self.uea.mul_terms(self.terms, other.terms))
        if isinstance(other, (int, Fraction, Scalar)):
            return UEAElement(self.uea, {m: c * other for m, c in self.terms.items()})
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, Scalar)):
            return UEAElement(self.uea, {m: other * c for m, c in self.terms.items()})
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, Scalar)):
            return self * (Fraction(1) / other)
        return NotImplemented

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        out = self.uea.one()
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, UEAElement):
            return self.uea.compatible(other.uea) and self.terms == other.terms
        if isinstance(other, (int, Fraction, Scalar)):
            return self == self.uea.one() * other
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def degree(self) -> int:
        return max((sum(abs(e) for e in m) for m in self.terms), default=-1)

    def top_component(self) -> dict:
        d = self.degree()
        return {m: c for m, c in self.terms.items() if sum(abs(e) for e in m) == d}

    def commutator(self, other: UEAElement) -> UEAElement:
        return self * other - other * self

    def __repr__(self):
        return f"UEAElement({self})"

    def __str__(self):
        from .lie import _signed_term

        if not self.terms:
            return "0"
        key = lambda m: (-sum(abs(e) for e in m), [-e for e in m])  # noqa: E731
        parts = []
        for m in sorted(self.terms, key=key):
            body = "" if m == self.uea.unit else self.uea.format_monomial(m)
            parts.append(_signed_term(self.terms[m], body))
        text = " ".join(parts)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]


def normal_order(algebra: SchrodingerAlgebra, word, coef=1, zdot=None) -> UEAElement:
    """PBW normal form of ``coef * word[0] * word[1] * ...`` (default ordering)."""
    uea = UEA(algebra) if zdot is None else UEA(algebra).reduced(zdot)
    return uea.word(word, coef)


def reduce_central(a: UEAElement, zdot) -> UEAElement:
    """Image of ``a`` in U(s_n)/<z - zdot>."""
    if a.uea.zdot is not None:
        raise ValueError("element is already reduced")
    target = a.uea.reduced(zdot)
    zp = a.uea.z_pos
    out: dict = {}
    for m, c in a.terms.items():
        k = m[zp]
        if k:
            m = m[:zp] + (0,) + m[zp + 1:]
            c = c * zdot ** k
        if c:
            add_into(out, {m: c})
    return UEAElement(target, out)
