"""Finite-dimensional so_n-modules, given by exact matrices for each s(i,j)."""

from __future__ import annotations

from fractions import Fraction

from ..lie import SchrodingerAlgebra
from ..linalg import add_into, compose, kernel
from ..scalars import Scalar, sstr, to_scalar

__all__ = ["SoModule", "so_module"]


def _columns_from_rows(rows) -> list[dict]:
    d = len(rows)
    cols = [dict() for _ in range(d)]
    for r, row in enumerate(rows):
        if len(row) != d:
            raise ValueError("matrices must be square")
        for c, v in enumerate(row):
            if not isinstance(v, (Fraction, Scalar)):
                v = Fraction(v)
            if v:
                cols[c][r] = v
    return cols


def _sub(a: list[dict], b: list[dict]) -> list[dict]:
    out = []
    for ca, cb in zip(a, b):
        col = dict(ca)
        add_into(col, cb, -1)
        out.append(col)
    return out


class SoModule:
    """``matrices[s(i,j)]`` is a list of sparse columns; relations are checked on construction."""

    def __init__(self, n: int, dim: int, matrices: dict, name: str = "user", check: bool = True):
        self.n = n
        self.dim = dim
        self.name = name
        self.algebra = SchrodingerAlgebra(n)
        self.matrices = {}
        for g in self.algebra.s_gens:
            m = matrices.get(g)
            if m is None:
                m = [dict() for _ in range(dim)]
            elif m and not isinstance(m[0], dict):
                m = _columns_from_rows(m)
            if len(m) != dim:
                raise ValueError(f"matrix for {g} has wrong size")
            self.matrices[g] = m
        extra = set(matrices) - set(self.algebra.s_gens)
        if extra:
            raise ValueError(f"not generators of so_{n}: {sorted(map(str, extra))}")
        if check:
            bad = self.relation_violations()
            if bad:
                raise ValueError(f"matrices violate the so_{n} relations at {bad[0]}")

    def act(self, g, j: int) -> dict:
        return self.matrices[g][j]

    def relation_violations(self) -> list[str]:
        alg = self.algebra
        bad = []
        for a in alg.s_gens:
            for b in alg.s_gens:
                A, B = self.matrices[a], self.matrices[b]
                lhs = _sub(compose(A, B), compose(B, A))
                rhs = [dict() for _ in range(self.dim)]
                for g, c in alg.bracket_basis(a, b).items():
                    for col, src in zip(rhs, self.matrices[g]):
                        add_into(col, src, c)
                if lhs != rhs:
                    bad.append(f"[{a},{b}]")
        return bad

    def commutant_dimension(self) -> int:
        """dim of {X : X S = S X for all s}; 1 means absolutely irreducible (Schur)."""
        d = self.dim
        columns = []
        for p in range(d):
            for q in range(d):
                # X = E_pq: (X S - S X)
                vec: dict = {}
                for g, S in self.matrices.items():
                    for c in range(d):
                        v = S[c].get(q)
                        if v:
                            add_into(vec, {(g, p, c): v})
                    for r, v in S[p].items():
                        add_into(vec, {(g, r, q): v}, -1)
                columns.append(vec)
        return len(kernel(columns))

    def is_irreducible(self) -> bool:
        return self.commutant_dimension() == 1

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "dim": self.dim,
            "name": self.name,
            "matrices": {
                str(g): [[sstr(col.get(r, 0)) for col in m] for r in range(self.dim)]
                for g, m in self.matrices.items()
            },
        }

    def __repr__(self):
        return f"SoModule(n={self.n}, dim={self.dim}, name={self.name!r})"


def so_module(tag: str, n: int, matrices: dict | None = None) -> SoModule:
    """``trivial``, ``natural``, the 1-dim ``plus``/``minus`` lines of so_2, or ``user``."""
    alg = SchrodingerAlgebra(n)
    if tag == "trivial":
        return SoModule(n, 1, {}, "trivial")
    if tag == "natural":
        mats = {}
        for g in alg.s_gens:
            cols = [dict() for _ in range(n)]
            cols[g.j - 1][g.i - 1] = Fraction(1)
            cols[g.i - 1][g.j - 1] = Fraction(-1)
            mats[g] = cols
        return SoModule(n, n, mats, "natural")
    if tag in ("plus", "minus"):
        if n != 2:
            raise ValueError("the +-i eigenlines exist for n=2 only")
        sign = 1 if tag == "plus" else -1
        return SoModule(2, 1, {alg.s_gens[0]: [{0: to_scalar(Scalar(0, sign))}]}, tag)
    if tag == "user":
        if matrices is None:
            raise ValueError("user modules need matrices")
        dims = {len(m) for m in matrices.values()}
        if len(dims) != 1:
            raise ValueError("user matrices have inconsistent sizes")
        return SoModule(n, dims.pop(), matrices, "user")
    raise ValueError(f"unknown so_n module tag {tag!r}")
