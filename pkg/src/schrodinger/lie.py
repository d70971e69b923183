"""The Schrodinger Lie algebra s_n = (sl_2 + so_n) x| h_n.

Basis: ``h, e, f`` (sl_2), ``s(i,j)`` with i < j (so_n), ``x(i), y(i)`` and the
central ``z`` (Heisenberg part).  Brackets come from the relation table; an
independent faithful matrix realization in gl_{2n+2} is kept as an oracle.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product
from typing import NamedTuple

from .linalg import add_into
from .scalars import sstr

__all__ = [
    "Generator",
    "LieElement",
    "SchrodingerAlgebra",
    "StructureReport",
    "bracket",
    "verify_structure",
]


class Generator(NamedTuple):
    kind: str  # one of h e f z x y s
    i: int = 0
    j: int = 0

    def __str__(self):
        if self.kind in "xy":
            return f"{self.kind}({self.i})"
        if self.kind == "s":
            return f"s({self.i},{self.j})"
        return self.kind


H, E, F, Z = Generator("h"), Generator("e"), Generator("f"), Generator("z")

# h-weight carried by each kind of generator
SHIFT = {"h": 0, "z": 0, "s": 0, "e": 2, "f": -2, "x": 1, "y": -1}


def _delta(a, b):
    return 1 if a == b else 0


class SchrodingerAlgebra:
    """Structure constants of s_n.

    ``overrides`` replaces individual basis brackets (and their antisymmetric
    partners); it exists for fault injection in the verification tools.
    """

    def __init__(self, n: int, overrides: dict | None = None):
        if not isinstance(n, int) or n < 1:
            raise ValueError("n must be a positive integer")
        self.n = n
        self.s_gens = [Generator("s", i, j) for i, j in combinations(range(1, n + 1), 2)]
        self.x_gens = [Generator("x", i) for i in range(1, n + 1)]
        self.y_gens = [Generator("y", i) for i in range(1, n + 1)]
        # PBW order: all s(i,j), then f, h, e, y(1..n), x(1..n), z
        self.basis = self.s_gens + [F, H, E] + self.y_gens + self.x_gens + [Z]
        self.index = {g: k for k, g in enumerate(self.basis)}
        self.overrides = dict(overrides or {})
        self._table = self._build_table()

    def __repr__(self):
        return f"SchrodingerAlgebra(n={self.n})"

    def __eq__(self, other):
        return isinstance(other, SchrodingerAlgebra) and self.n == other.n and self.overrides == other.overrides

    def __hash__(self):
        return hash(("s_n", self.n))

    @property
    def dim(self) -> int:
        return len(self.basis)

    # generators and elements

    def check_generator(self, g: Generator) -> Generator:
        if g not in self.index:
            raise ValueError(f"{g} is not a basis generator of s_{self.n}")
        return g

    def s_term(self, i: int, j: int) -> tuple[int, Generator | None]:
        """Normalize s(i,j) into (sign, generator); s(i,i) is zero."""
        n = self.n
        if not (1 <= i <= n and 1 <= j <= n):
            raise ValueError(f"s({i},{j}) out of range for n={n}")
        if i == j:
            return 0, None
        if i < j:
            return 1, Generator("s", i, j)
        return -1, Generator("s", j, i)

    def gen(self, name: str, *args) -> LieElement:
        """Basis element by name: ``gen('e')``, ``gen('x', 1)``, ``gen('s', 2, 1)``."""
        if name == "s":
            if len(args) != 2:
                raise ValueError("s needs two indices")
            sign, g = self.s_term(*args)
            if g is None:
                raise ValueError("s(i,i) is not a basis element")
            return LieElement(self, {g: Fraction(sign)})
        if name in ("x", "y"):
            if len(args) != 1 or not 1 <= args[0] <= self.n:
                raise ValueError(f"{name} needs one index in 1..{self.n}")
            return LieElement(self, {Generator(name, args[0]): Fraction(1)})
        if name in ("h", "e", "f", "z") and not args:
            return LieElement(self, {Generator(name): Fraction(1)})
        raise ValueError(f"unknown generator {name}{args}")

    def element(self, terms: dict) -> LieElement:
        return LieElement(self, {self.check_generator(g): c for g, c in terms.items()})

    def zero(self) -> LieElement:
        return LieElement(self, {})

    def parse(self, text: str) -> LieElement:
        from .parsing import parse_expression

        return parse_expression(text, lambda name, args: self.gen(name, *args))

    # triangular decomposition

    @property
    def positive(self) -> list[Generator]:
        return [E] + self.x_gens

    @property
    def negative(self) -> list[Generator]:
        return [F] + self.y_gens

    @property
    def cartan(self) -> list[Generator]:
        return self.s_gens + [H, Z]

    # brackets

    def _build_table(self) -> dict:
        n = self.n
        table: dict = {}

        def put(a, b, value):
            value = {g: Fraction(c) for g, c in value.items() if c}
            neg = {g: -c for g, c in value.items()}
            for key, val in (((a, b), value), ((b, a), neg)):
                if key in table and table[key] != val:
                    raise AssertionError(f"inconsistent relation table at {key}")
                table[key] = val

        def s_lin(pairs):
            out: dict = {}
            for coef, (i, j) in pairs:
                if not coef:
                    continue
                sign, g = self.s_term(i, j)
                if g is not None:
                    out[g] = out.get(g, 0) + sign * coef
            return {g: c for g, c in out.items() if c}

        put(H, E, {E: 2})
        put(H, F, {F: -2})
        put(E, F, {H: 1})
        for i in range(1, n + 1):
            xi, yi = Generator("x", i), Generator("y", i)
            put(xi, yi, {Z: 1})
            put(H, xi, {xi: 1})
            put(H, yi, {yi: -1})
            put(E, yi, {xi: 1})
            put(F, xi, {yi: 1})
        for g in self.s_gens:
            k, l = g.i, g.j
            for i in range(1, n + 1):
                # [s_kl, x_i] = d_li x_k - d_ki x_l, same for y
                for kind in "xy":
                    val = {}
                    if l == i:
                        val[Generator(kind, k)] = 1
                    if k == i:
                        val[Generator(kind, l)] = val.get(Generator(kind, l), 0) - 1
                    put(g, Generator(kind, i), val)
        for g1, g2 in product(self.s_gens, repeat=2):
            i, j, k, l = g1.i, g1.j, g2.i, g2.j
            put(g1, g2, s_lin([
                (_delta(k, j), (i, l)),
                (_delta(i, l), (j, k)),
                (_delta(l, j), (k, i)),
                (_delta(k, i), (l, j)),
            ]))
        for (a, b), val in self.overrides.items():
            table[(a, b)] = {g: Fraction(c) for g, c in val.items() if c}
            table[(b, a)] = {g: -Fraction(c) for g, c in val.items() if c}
        return table

    def bracket_basis(self, a: Generator, b: Generator) -> dict:
        return self._table.get((a, b), {})

    # matrix oracle

    def matrix(self, g: Generator) -> list[list[Fraction]]:
        """Image of a basis element in gl_{2n+2}.

        Block form ``[[0, v^T J, c], [0, A, v], [0, 0, 0]]`` where ``A`` is the
        gl_{2n} image of the sl_2 + so_n part, ``v`` the Heisenberg vector,
        ``c`` the z-coordinate and ``J = 1/2 [[0, I], [-I, 0]]``.
        """
        return _realization(self.n, g)

    def decode_matrix(self, mat) -> LieElement:
        """Inverse of :meth:`matrix` on its (linear) image; raises if ``mat`` is outside it."""
        return self.element(_decode(self.n, mat))

    def tau(self, a: LieElement) -> LieElement:
        """The automorphism e -> -f, f -> -e, h -> -h, x_i -> -y_i, y_i -> x_i, s -> s, z -> z."""
        out: dict = {}
        for g, c in a.terms.items():
            for g2, c2 in _tau_gen(g).items():
                add_into(out, {g2: c2}, c)
        return LieElement(self, out)


def _tau_gen(g: Generator) -> dict:
    if g.kind == "e":
        return {F: -1}
    if g.kind == "f":
        return {E: -1}
    if g.kind == "h":
        return {H: -1}
    if g.kind == "x":
        return {Generator("y", g.i): -1}
    if g.kind == "y":
        return {Generator("x", g.i): 1}
    return {g: 1}


@lru_cache(maxsize=None)
def _realization(n: int, g: Generator):
    N = 2 * n + 2
    m = [[Fraction(0)] * N for _ in range(N)]
    half = Fraction(1, 2)
    if g.kind == "h":
        for k in range(n):
            m[1 + k][1 + k] = Fraction(1)
            m[1 + n + k][1 + n + k] = Fraction(-1)
    elif g.kind == "e":
        for k in range(n):
            m[1 + k][1 + n + k] = Fraction(1)
    elif g.kind == "f":
        for k in range(n):
            m[1 + n + k][1 + k] = Fraction(1)
    elif g.kind == "s":
        i, j = g.i - 1, g.j - 1
        for off in (0, n):
            m[1 + off + i][1 + off + j] = Fraction(1)
            m[1 + off + j][1 + off + i] = Fraction(-1)
    elif g.kind == "x":
        k = g.i - 1
        m[1 + k][N - 1] = Fraction(1)
        m[0][1 + n + k] = half  # v^T J with v = e_k
    elif g.kind == "y":
        k = g.i - 1
        m[1 + n + k][N - 1] = Fraction(1)
        m[0][1 + k] = -half
    elif g.kind == "z":
        m[0][N - 1] = Fraction(1)
    return tuple(tuple(r) for r in m)


def _decode(n: int, m) -> dict:
    N = 2 * n + 2
    if len(m) != N:
        raise ValueError("wrong matrix size")
    mid = lambda r, c: m[1 + r][1 + c]  # noqa: E731
    a = sum(mid(k, k) for k in range(n)) / n
    b = mid(0, n)
    c = mid(n, 0)
    out: dict = {}
    if a:
        out[H] = a
    if b:
        out[E] = b
    if c:
        out[F] = c
    A = [[mid(r, q) - (a if r == q else 0) for q in range(n)] for r in range(n)]
    for r in range(n):
        for q in range(n):
            if A[r][q] != -A[q][r]:
                raise ValueError("so_n block is not antisymmetric")
            if r < q and A[r][q]:
                out[Generator("s", r + 1, q + 1)] = A[r][q]
    rebuilt = [[Fraction(0)] * (2 * n) for _ in range(2 * n)]
    for r in range(n):
        for q in range(n):
            rebuilt[r][q] = A[r][q] + (a if r == q else 0)
            rebuilt[n + r][n + q] = A[r][q] - (a if r == q else 0)
        rebuilt[r][n + r] = b
        rebuilt[n + r][r] = c
    for r in range(2 * n):
        for q in range(2 * n):
            if rebuilt[r][q] != mid(r, q):
                raise ValueError("gl_2n block is outside sl_2 + so_n")
    v = [m[1 + r][N - 1] for r in range(2 * n)]
    for k in range(n):
        if v[k]:
            out[Generator("x", k + 1)] = v[k]
        if v[n + k]:
            out[Generator("y", k + 1)] = v[n + k]
    if m[0][N - 1]:
        out[Z] = m[0][N - 1]
    half = Fraction(1, 2)
    expected_top = [-half * v[n + k] for k in range(n)] + [half * v[k] for k in range(n)]
    if [m[0][1 + r] for r in range(2 * n)] != expected_top:
        raise ValueError("top row is not v^T J")
    if any(m[r][0] for r in range(N)) or any(m[N - 1][q] for q in range(N)):
        raise ValueError("matrix has entries outside the realization pattern")
    return out


def _matmul(a, b):
    N = len(a)
    return [[sum(a[r][k] * b[k][c] for k in range(N) if a[r][k]) for c in range(N)] for r in range(N)]


def matrix_commutator(a, b):
    ab, ba = _matmul(a, b), _matmul(b, a)
    return [[x - y for x, y in zip(r1, r2)] for r1, r2 in zip(ab, ba)]


class LieElement:
    """Finite linear combination of basis generators of s_n."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: SchrodingerAlgebra, terms: dict):
        self.algebra = algebra
        self.terms = {g: c for g, c in terms.items() if c}

    def _check(self, other):
        if not isinstance(other, LieElement):
            return False
        if other.algebra.n != self.algebra.n:
            raise ValueError(f"mismatched rank: n={self.algebra.n} vs n={other.algebra.n}")
        return True

    def __add__(self, other):
        if not self._check(other):
            return NotImplemented
        out = dict(self.terms)
        add_into(out, other.terms)
        return LieElement(self.algebra, out)

    def __sub__(self, other):
        if not self._check(other):
            return NotImplemented
        out = dict(self.terms)
        add_into(out, other.terms, -1)
        return LieElement(self.algebra, out)

    def __neg__(self):
        return LieElement(self.algebra, {g: -c for g, c in self.terms.items()})

    def __mul__(self, c):
        if isinstance(c, LieElement):
            raise TypeError("use bracket() for Lie products")
        return LieElement(self.algebra, {g: v * c for g, v in self.terms.items()})

    __rmul__ = __mul__

    def __truediv__(self, c):
        return self * (1 / c)

    def __eq__(self, other):
        if isinstance(other, LieElement):
            return self.algebra.n == other.algebra.n and self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def support(self) -> set:
        return set(self.terms)

    def in_positive(self) -> bool:
        return self.support() <= set(self.algebra.positive)

    def in_negative(self) -> bool:
        return self.support() <= set(self.algebra.negative)

    def in_cartan(self) -> bool:
        return self.support() <= set(self.algebra.cartan)

    def matrix(self):
        N = 2 * self.algebra.n + 2
        out = [[Fraction(0)] * N for _ in range(N)]
        for g, c in self.terms.items():
            m = self.algebra.matrix(g)
            for r in range(N):
                for q in range(N):
                    if m[r][q]:
                        out[r][q] += c * m[r][q]
        return out

    def __repr__(self):
        return f"LieElement({self})"

    def __str__(self):
        return format_linear(self.terms, self.algebra.index)


def format_linear(terms: dict, order: dict) -> str:
    if not terms:
        return "0"
    out = []
    for g in sorted(terms, key=lambda g: order[g]):
        c = terms[g]
        out.append(_signed_term(c, str(g)))
    text = " ".join(out)
    return text[2:] if text.startswith("+ ") else "-" + text[2:]


def _signed_term(c, body: str) -> str:
    from .scalars import Scalar

    if isinstance(c, Scalar) and not c.is_rational():
        return f"+ ({sstr(c)})*{body}" if body else f"+ ({sstr(c)})"
    c = c.c[0] if isinstance(c, Scalar) else Fraction(c)
    sign = "-" if c < 0 else "+"
    a = abs(c)
    if not body:
        return f"{sign} {sstr(a)}"
    if a == 1:
        return f"{sign} {body}"
    return f"{sign} {sstr(a)}*{body}"


def bracket(a: LieElement, b: LieElement) -> LieElement:
    """Bilinear extension of the structure constants."""
    if a.algebra.n != b.algebra.n:
        raise ValueError(f"mismatched rank: n={a.algebra.n} vs n={b.algebra.n}")
    alg = a.algebra
    out: dict = {}
    for g1, c1 in a.terms.items():
        for g2, c2 in b.terms.items():
            add_into(out, alg.bracket_basis(g1, g2), c1 * c2)
    return LieElement(alg, out)


@dataclass
class StructureReport:
    n: int
    pairs_checked: int = 0
    triples_checked: int = 0
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    @property
    def violations(self) -> int:
        return len(self.failures)

    @property
    def first_counterexample(self):
        return self.failures[0] if self.failures else None

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "passed": self.passed,
            "violations": self.violations,
            "pairs_checked": self.pairs_checked,
            "triples_checked": self.triples_checked,
            "first_counterexample": self.first_counterexample,
        }


def verify_structure(n: int, algebra: SchrodingerAlgebra | None = None, max_failures: int = 20) -> StructureReport:
    """Check the bracket table against the matrix realization, then the Jacobi identity."""
    alg = algebra or SchrodingerAlgebra(n)
    rep = StructureReport(n=alg.n)
    basis = alg.basis
    for a, b in product(basis, repeat=2):
        rep.pairs_checked += 1
        got = alg.element(alg.bracket_basis(a, b))
        want = alg.decode_matrix(matrix_commutator(alg.matrix(a), alg.matrix(b)))
        if got != want and len(rep.failures) < max_failures:
            rep.failures.append({
                "check": "matrix_oracle",
                "generators": [str(a), str(b)],
                "expected": str(want),
                "got": str(got),
            })
    for a, b, c in product(basis, repeat=3):
        rep.triples_checked += 1
        acc: dict = {}
        for p, q, r in ((a, b, c), (b, c, a), (c, a, b)):
            for g, coef in alg.bracket_basis(q, r).items():
                add_into(acc, alg.bracket_basis(p, g), coef)
        if acc and len(rep.failures) < max_failures:
            rep.failures.append({
                "check": "jacobi",
                "generators": [str(a), str(b), str(c)],
                "got": format_linear(acc, alg.index),
            })
    return rep
