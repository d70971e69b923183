"""Weyl algebra D_n, the differential-operator realization of s_n, and D_n-modules.

``WeylRealization(algebra, s)`` carries both maps out of U(s_n)/<z - s^2>:
``theta`` into D_n and ``phi`` into U(so_n + sl_2) (x) D_n.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import comb, prod

from .lie import E, F, H, Z, Generator, LieElement, SchrodingerAlgebra
from .linalg import Eliminator, add_into, rank, reduced_basis
from .scalars import Scalar, as_fraction, sstr
from .uea import UEA, UEAElement

__all__ = [
    "PolyModuleVector",
    "TensorElement",
    "TruncationError",
    "WeylOperator",
    "WeylRealization",
    "act",
    "cyclic_span",
    "d1_module_basis",
    "phi",
    "phi_injectivity_check",
    "theta",
]


class TruncationError(ArithmeticError):
    """An exponent left the tracked window; raised instead of dropping terms."""


@lru_cache(maxsize=None)
def _d_past_t(b: int, c: int) -> tuple:
    """d^b t^c = sum_k C(b,k) c!/(c-k)! t^(c-k) d^(b-k)."""
    out = []
    for k in range(min(b, c) + 1):
        out.append((k, comb(b, k) * prod(range(c - k + 1, c + 1))))
    return tuple(out)


@lru_cache(maxsize=200_000)
def _key_mul(k1: tuple, k2: tuple) -> tuple:
    (a, b), (c, d) = k1, k2
    per_var = [_d_past_t(bi, ci) for bi, ci in zip(b, c)]
    out = {}
    for choice in product(*per_var):
        coef = 1
        na, nb = [], []
        for i, (k, cf) in enumerate(choice):
            coef *= cf
            na.append(a[i] + c[i] - k)
            nb.append(b[i] + d[i] - k)
        key = (tuple(na), tuple(nb))
        out[key] = out.get(key, 0) + coef
    return tuple((k, Fraction(v)) for k, v in out.items() if v)


class WeylOperator:
    """Normal-ordered differential operator ``sum c_{a,b} t^a d^b`` (t's left of d's)."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: dict | None = None):
        self.n = n
        self.terms = {k: c for k, c in (terms or {}).items() if c}

    @classmethod
    def const(cls, n: int, c=1) -> WeylOperator:
        z = (0,) * n
        return cls(n, {(z, z): Fraction(1) * c})

    @classmethod
    def t(cls, n: int, i: int) -> WeylOperator:
        a = [0] * n
        a[i - 1] = 1
        return cls(n, {(tuple(a), (0,) * n): Fraction(1)})

    @classmethod
    def d(cls, n: int, i: int) -> WeylOperator:
        b = [0] * n
        b[i - 1] = 1
        return cls(n, {((0,) * n, tuple(b)): Fraction(1)})

    @classmethod
    def parse(cls, n: int, text: str) -> WeylOperator:
        from .parsing import parse_expression

        def resolve(name, args):
            if len(args) != 1 or not 1 <= args[0] <= n:
                raise ValueError(f"{name} needs one index in 1..{n}")
            if name == "t":
                return cls.t(n, args[0])
            if name in ("d", "D"):
                return cls.d(n, args[0])
            raise ValueError(f"unknown operator symbol {name!r}")

        return parse_expression(text, resolve, lambda: cls.const(n))

    def _other(self, other):
        if isinstance(other, WeylOperator):
            if other.n != self.n:
                raise ValueError(f"mismatched rank: n={self.n} vs n={other.n}")
            return other
        if isinstance(other, (int, Fraction, Scalar)):
            return WeylOperator.const(self.n, other)
        return None

    def __add__(self, other):
        other = self._other(other)
        if other is None:
            return NotImplemented
        out = dict(self.terms)
        add_into(out, other.terms)
        return WeylOperator(self.n, out)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._other(other)
        if other is None:
            return NotImplemented
        out = dict(self.terms)
        add_into(out, other.terms, -1)
        return WeylOperator(self.n, out)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return WeylOperator(self.n, {k: -c for k, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Scalar)):
            return WeylOperator(self.n, {k: c * other for k, c in self.terms.items()})
        other = self._other(other)
        if other is None:
            return NotImplemented
        return WeylOperator(self.n, weyl_mul_terms(self.terms, other.terms))

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, Scalar)):
            return WeylOperator(self.n, {k: other * c for k, c in self.terms.items()})
        return NotImplemented

    def __pow__(self, k: int):
        out = WeylOperator.const(self.n)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        other = self._other(other)
        if other is None:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def commutator(self, other: WeylOperator) -> WeylOperator:
        return self * other - other * self

    def __repr__(self):
        return f"WeylOperator({self})"

    def __str__(self):
        from .lie import _signed_term

        if not self.terms:
            return "0"
        parts = []
        for key in sorted(self.terms, key=lambda k: (-sum(k[0]) - sum(k[1]), k)):
            parts.append(_signed_term(self.terms[key], format_weyl_key(key)))
        text = " ".join(parts)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]


def format_weyl_key(key) -> str:
    a, b = key
    parts = []
    for sym, exps in (("t", a), ("d", b)):
        for i, e in enumerate(exps, start=1):
            if e:
                parts.append(f"{sym}({i})" if e == 1 else f"{sym}({i})^{e}")
    return " ".join(parts)


def weyl_mul_terms(x: dict, y: dict) -> dict:
    out: dict = {}
    for k1, c1 in x.items():
        for k2, c2 in y.items():
            c = c1 * c2
            for k, v in _key_mul(k1, k2):
                add_into(out, {k: v * c})
    return out


def weyl_multiply(a: WeylOperator, b: WeylOperator) -> WeylOperator:
    return a * b


class TensorElement:
    """Element of U(so_n + sl_2) (x) D_n, stored as {(PBW monomial, Weyl key): coef}.

    The left factor lives in the default-ordered U(s_n) but only ever involves
    ``s(i,j), f, h, e``.
    """

    __slots__ = ("realization", "terms")

    def __init__(self, realization: WeylRealization, terms: dict):
        self.realization = realization
        self.terms = {k: c for k, c in terms.items() if c}

    def __add__(self, other):
        out = dict(self.terms)
        add_into(out, other.terms)
        return TensorElement(self.realization, out)

    def __sub__(self, other):
        out = dict(self.terms)
        add_into(out, other.terms, -1)
        return TensorElement(self.realization, out)

    def __neg__(self):
        return TensorElement(self.realization, {k: -c for k, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, TensorElement):
            return TensorElement(self.realization, self.realization.tensor_mul(self.terms, other.terms))
        if isinstance(other, (int, Fraction, Scalar)):
            return TensorElement(self.realization, {k: c * other for k, c in self.terms.items()})
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, Scalar)):
            return self * other
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, TensorElement):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def left_has_heisenberg(self) -> bool:
        uea = self.realization.left
        heis = [uea.pos[g] for g in self.realization.algebra.x_gens + self.realization.algebra.y_gens + [Z]]
        return any(m[p] for (m, _), _c in self.terms.items() for p in heis)

    def weyl_part(self, left_monomial=None) -> WeylOperator:
        """The D_n component attached to a given left monomial (default: the unit)."""
        lm = self.realization.left.unit if left_monomial is None else left_monomial
        n = self.realization.algebra.n
        return WeylOperator(n, {k: c for (m, k), c in self.terms.items() if m == lm})

    def __repr__(self):
        return f"TensorElement({self})"

    def __str__(self):
        from .lie import _signed_term

        if not self.terms:
            return "0"
        left = self.realization.left
        parts = []
        for (m, k), c in sorted(self.terms.items(), key=lambda kv: (kv[0][0], kv[0][1])):
            body = f"{left.format_monomial(m)} (x) {format_weyl_key(k) or '1'}"
            parts.append(_signed_term(c, body))
        text = " ".join(parts)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]


class WeylRealization:
    """theta: U(s_n)/<z - s^2> -> D_n and phi: U(s_n)/<z - s^2> -> U(so_n + sl_2) (x) D_n."""

    def __init__(self, algebra: SchrodingerAlgebra | int, s):
        if isinstance(algebra, int):
            algebra = SchrodingerAlgebra(algebra)
        self.algebra = algebra
        self.n = algebra.n
        self.s = s
        self.zdot = s * s
        self.left = UEA(algebra)
        self._theta: dict = {}
        self._phi_mono: dict = {}
        self._left_mul_cache: dict = {}

    # theta

    def theta_gen(self, g: Generator) -> WeylOperator:
        if g in self._theta:
            return self._theta[g]
        n, s = self.n, self.s
        W = WeylOperator
        half = Fraction(1, 2)
        if g.kind == "x":
            op = W.d(n, g.i) * s
        elif g.kind == "y":
            op = W.t(n, g.i) * s
        elif g.kind == "e":
            op = sum((W.d(n, k) * W.d(n, k) for k in range(1, n + 1)), W(n)) * half
        elif g.kind == "f":
            op = sum((W.t(n, k) * W.t(n, k) for k in range(1, n + 1)), W(n)) * (-half)
        elif g.kind == "h":
            op = sum((W.d(n, k) * W.t(n, k) + W.t(n, k) * W.d(n, k) for k in range(1, n + 1)), W(n)) * (-half)
        elif g.kind == "s":
            op = W.t(n, g.i) * W.d(n, g.j) - W.t(n, g.j) * W.d(n, g.i)
        else:
            raise ValueError("z has no image before central reduction; reduce it to zdot first")
        self._theta[g] = op
        return op

    def theta(self, a: LieElement | Generator) -> WeylOperator:
        if isinstance(a, Generator):
            return self.theta_gen(a)
        out = WeylOperator(self.n)
        for g, c in a.terms.items():
            out = out + self.theta_gen(g) * c
        return out

    def theta_uea(self, u: UEAElement) -> WeylOperator:
        self._check_reduced(u)
        out: dict = {}
        for m, c in u.terms.items():
            op = WeylOperator.const(self.n)
            for g, e in zip(u.uea.order, m):
                for _ in range(e):
                    op = op * self.theta_gen(g)
            add_into(out, op.terms, c)
        return WeylOperator(self.n, out)

    def _check_reduced(self, u: UEAElement):
        if u.uea.zdot is None:
            if any(m[u.uea.z_pos] for m in u.terms):
                raise ValueError("unreduced z present; apply reduce_central first")
        elif u.uea.zdot != self.zdot:
            raise ValueError(f"element reduced at zdot={sstr(u.uea.zdot)}, realization has s^2={sstr(self.zdot)}")

    # phi

    def tensor_mul(self, x: dict, y: dict) -> dict:
        out: dict = {}
        for (m1, k1), c1 in x.items():
            for (m2, k2), c2 in y.items():
                lp = self._left_mul_cache.get((m1, m2))
                if lp is None:
                    lp = tuple(self.left.mul_terms({m1: Fraction(1)}, {m2: Fraction(1)}).items())
                    self._left_mul_cache[(m1, m2)] = lp
                c = c1 * c2
                wk = _key_mul(k1, k2)
                for lm, lc in lp:
                    for k, wc in wk:
                        add_into(out, {(lm, k): lc * wc * c})
        return out

    def one(self) -> TensorElement:
        z = (0,) * self.n
        return TensorElement(self, {(self.left.unit, (z, z)): Fraction(1)})

    def left_tensor_one(self, g: Generator) -> TensorElement:
        z = (0,) * self.n
        m = self.left.gen(g)
        return TensorElement(self, {(lm, (z, z)): c for lm, c in m.terms.items()})

    def one_tensor(self, op: WeylOperator) -> TensorElement:
        return TensorElement(self, {(self.left.unit, k): c for k, c in op.terms.items()})

    def phi_gen(self, g: Generator) -> TensorElement:
        if g.kind in "xy":
            return self.one_tensor(self.theta_gen(g))
        if g.kind == "z":
            raise ValueError("z has no image before central reduction; reduce it to zdot first")
        return self.left_tensor_one(g) + self.one_tensor(self.theta_gen(g))

    def phi(self, a: LieElement | Generator) -> TensorElement:
        if isinstance(a, Generator):
            return self.phi_gen(a)
        out = TensorElement(self, {})
        for g, c in a.terms.items():
            out = out + self.phi_gen(g) * c
        return out

    def phi_monomial(self, order, mono: tuple) -> TensorElement:
        key = (tuple(order), mono)
        hit = self._phi_mono.get(key)
        if hit is not None:
            return hit
        p = next((k for k, e in enumerate(mono) if e), None)
        if p is None:
            res = self.one()
        else:
            rest = list(mono)
            rest[p] -= 1
            res = self.phi_gen(order[p]) * self.phi_monomial(order, tuple(rest))
        self._phi_mono[key] = res
        return res

    def phi_uea(self, u: UEAElement) -> TensorElement:
        self._check_reduced(u)
        out: dict = {}
        for m, c in u.terms.items():
            add_into(out, self.phi_monomial(u.uea.order, m).terms, c)
        return TensorElement(self, out)

    def reduced_uea(self) -> UEA:
        return self.left.reduced(self.zdot)

    def injectivity_check(self, max_degree: int) -> dict:
        """Rank of the phi-images of every PBW monomial of degree <= max_degree."""
        uea = self.reduced_uea()
        el = Eliminator()
        count = 0
        for m in uea.monomials(max_degree):
            count += 1
            el.add(self.phi_monomial(uea.order, m).terms)
        return {
            "n": self.n,
            "s": sstr(self.s),
            "zdot": sstr(self.zdot),
            "max_degree": max_degree,
            "monomials": count,
            "rank": el.rank,
            "injective": el.rank == count,
            "passed": el.rank == count,
        }


def theta(g, s, n: int | None = None) -> WeylOperator:
    """theta of a Lie element (or a generator of s_n, with ``n`` given)."""
    if isinstance(g, LieElement):
        return WeylRealization(g.algebra, s).theta(g)
    return WeylRealization(SchrodingerAlgebra(n), s).theta_gen(g)


def phi(g, s, n: int | None = None) -> TensorElement:
    if isinstance(g, LieElement):
        return WeylRealization(g.algebra, s).phi(g)
    return WeylRealization(SchrodingerAlgebra(n), s).phi_gen(g)


def phi_injectivity_check(max_degree: int, n: int, s) -> dict:
    return WeylRealization(SchrodingerAlgebra(n), s).injectivity_check(max_degree)


# D_n-modules


def _falling(mu, b: int):
    out = Fraction(1)
    for r in range(b):
        out = out * (mu - r)
    return out


@dataclass(frozen=True)
class PolyModuleVector:
    """Vector of C[t_1..t_n], t^lam1 C[t^+-1] (n=1) or C[t^+-1]/C[t] (n=1).

    Keys are exponent tuples; for ``twisted`` they are integer offsets from
    ``lam1``.  ``window`` bounds |exponent| for the Laurent kinds (and the
    degree for ``poly`` when given).
    """

    kind: str
    n: int
    coeffs: dict
    lam1: object = None
    window: int | None = None

    def __post_init__(self):
        if self.kind not in ("poly", "twisted", "quotient"):
            raise ValueError(f"unknown module kind {self.kind!r}")
        if self.kind != "poly" and self.n != 1:
            raise ValueError(f"{self.kind} modules exist only for n=1")
        if self.kind == "twisted":
            q = as_fraction(self.lam1)
            if self.lam1 is None or (q is not None and q.denominator == 1):
                raise ValueError("twisted Laurent module needs a non-integral lam1")
        clean = {}
        for k, c in self.coeffs.items():
            k = tuple(k)
            if len(k) != self.n:
                raise ValueError("exponent length does not match n")
            if self.kind == "poly" and min(k) < 0:
                raise ValueError("polynomial exponents must be nonnegative")
            if self.kind == "quotient" and k[0] >= 0:
                raise ValueError("quotient representatives need negative exponents")
            self._check_window(k)
            if c:
                clean[k] = c
        object.__setattr__(self, "coeffs", clean)

    def _check_window(self, k):
        W = self.window
        if W is None:
            return
        if self.kind == "poly":
            if sum(k) > W:
                raise TruncationError(f"degree {sum(k)} exceeds window {W}")
        elif abs(k[0]) > W:
            raise TruncationError(f"exponent offset {k[0]} outside window [-{W}, {W}]")

    def exponent(self, key):
        if self.kind == "twisted":
            return (self.lam1 + key[0],)
        return key

    def like(self, coeffs: dict) -> PolyModuleVector:
        return PolyModuleVector(self.kind, self.n, coeffs, self.lam1, self.window)

    def __add__(self, other):
        out = dict(self.coeffs)
        add_into(out, other.coeffs)
        return self.like(out)

    def __sub__(self, other):
        out = dict(self.coeffs)
        add_into(out, other.coeffs, -1)
        return self.like(out)

    def __mul__(self, c):
        return self.like({k: v * c for k, v in self.coeffs.items()})

    __rmul__ = __mul__

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, PolyModuleVector):
            return NotImplemented
        return (self.kind, self.n, self.coeffs) == (other.kind, other.n, other.coeffs) and (
            self.kind != "twisted" or self.lam1 == other.lam1)

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k in sorted(self.coeffs):
            mon = " ".join(f"t({i + 1})^{sstr(e)}" for i, e in enumerate(self.exponent(k)) if e != 0) or "1"
            parts.append(f"({sstr(self.coeffs[k])})*{mon}")
        return " + ".join(parts)


def act(op: WeylOperator, v: PolyModuleVector) -> PolyModuleVector:
    """Action of a differential operator; raises TruncationError instead of dropping terms."""
    if op.n != v.n:
        raise ValueError(f"operator rank {op.n} does not match module rank {v.n}")
    out: dict = {}
    for (a, b), c in op.terms.items():
        for key, cv in v.coeffs.items():
            mu = v.exponent(key)
            coef = c * cv
            for mi, bi in zip(mu, b):
                if bi:
                    coef = coef * _falling(mi, bi)
                    if not coef:
                        break
            if not coef:
                continue
            new = tuple(k - bi + ai for k, ai, bi in zip(key, a, b))
            if v.kind == "quotient" and new[0] >= 0:
                continue
            v._check_window(new)
            add_into(out, {new: coef})
    return v.like(out)


def d1_module_basis(kind: str, window: int, n: int = 1) -> list[tuple]:
    """Exponent keys tracked inside the window."""
    if kind == "poly":
        if n != 1:
            from itertools import product as _p

            return [k for k in _p(range(window + 1), repeat=n) if sum(k) <= window]
        return [(k,) for k in range(window + 1)]
    if kind == "twisted":
        return [(k,) for k in range(-window, window + 1)]
    if kind == "quotient":
        return [(k,) for k in range(-window, 0)]
    raise ValueError(kind)


def cyclic_span(v: PolyModuleVector, generators=None) -> int:
    """Dimension of the part of D_n v reachable inside the window.

    Repeatedly applies ``t_i, d_i, t_i d_i`` to a Gauss-Jordan basis of the
    current span until it stops growing. A product that would leave the window
    is skipped (never truncated), so every vector counted lies in the submodule
    generated by ``v``. Once the span is stable under ``t_i d_i`` its reduced
    basis consists of monomials, so no reachable monomial is missed.
    """
    n = v.n
    if generators is None:
        generators = []
        for i in range(1, n + 1):
            t, d = WeylOperator.t(n, i), WeylOperator.d(n, i)
            generators += [t, d, t * d]
    basis = reduced_basis([v.coeffs])
    while True:
        images = []
        for row in basis:
            for g in generators:
                try:
                    u = act(g, v.like(row))
                except TruncationError:
                    continue
                if u:
                    images.append(u.coeffs)
        if rank(basis + images) == len(basis):
            return len(basis)
        basis = reduced_basis(basis + images)


def is_cyclic(v: PolyModuleVector) -> bool:
    if not v:
        raise ValueError("cyclicity is asked of a nonzero vector")
    return cyclic_span(v) == len(d1_module_basis(v.kind, v.window, v.n))


def polynomial_vector(n: int, coeffs: dict, window: int | None = None) -> PolyModuleVector:
    return PolyModuleVector("poly", n, coeffs, window=window)


def h_tilde_eigenvalue(n: int, degree: int):
    """-(k + n/2): the value of theta(h) on a total-degree-k monomial."""
    return -(Fraction(degree) + Fraction(n, 2))


__all__ += ["is_cyclic", "polynomial_vector", "weyl_multiply", "h_tilde_eigenvalue", "E", "F", "H"]
