"""Exact sparse linear algebra over any field of python numbers.

Vectors are ``dict`` objects mapping hashable keys to nonzero coefficients;
nothing here cares whether the coefficients are ``Fraction`` or
:class:`~schrodinger.scalars.Scalar`.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Hashable, Iterable, Sequence

Vector = dict


def add_into(acc: dict, vec: dict, coef=1) -> None:
    """``acc += coef * vec`` in place, dropping cancelled entries."""
    for k, v in vec.items():
        c = acc.get(k)
        w = v * coef if c is None else c + v * coef
        if w:
            acc[k] = w
        elif c is not None:
            del acc[k]


def scaled(vec: dict, coef) -> dict:
    if not coef:
        return {}
    return {k: v * coef for k, v in vec.items()}


def vec_sub(a: dict, b: dict) -> dict:
    out = dict(a)
    add_into(out, b, -1)
    return out


class Eliminator:
    """Incremental Gaussian elimination.

    Each stored row carries a *tag* recording which input combination it
    came from, which is how kernels and solutions are read off.
    """

    def __init__(self):
        self._rows: list[tuple[Hashable, dict, dict]] = []

    @property
    def rank(self) -> int:
        return len(self._rows)

    def reduce(self, vec: dict, tag: dict | None = None) -> tuple[dict, dict]:
        vec = dict(vec)
        tag = dict(tag) if tag else {}
        for pivot, row, rtag in self._rows:
            c = vec.get(pivot)
            if c:
                add_into(vec, row, -c)
                add_into(tag, rtag, -c)
        return vec, tag

    def add(self, vec: dict, tag: dict | None = None) -> tuple[bool, dict, dict]:
        """Insert ``vec``; returns (independent?, residual, residual tag)."""
        vec, tag = self.reduce(vec, tag)
        if not vec:
            return False, vec, tag
        pivot = next(iter(vec))
        p = vec[pivot]
        inv = Fraction(1, p) if isinstance(p, int) else 1 / p
        row = scaled(vec, inv)
        rtag = scaled(tag, inv)
        self._rows.append((pivot, row, rtag))
        return True, vec, tag


def rank(vectors: Iterable[dict]) -> int:
    el = Eliminator()
    for v in vectors:
        el.add(v)
    return el.rank


def reduced_basis(vectors: Iterable[dict]) -> list[dict]:
    """Gauss-Jordan basis of the span: each pivot appears in exactly one row."""
    el = Eliminator()
    for v in vectors:
        el.add(v)
    rows = [(pivot, dict(row)) for pivot, row, _ in el._rows]
    for i, (pivot, row) in enumerate(rows):
        for j, (_, other) in enumerate(rows):
            c = other.get(pivot)
            if j != i and c:
                add_into(other, row, -c)
    return [row for _, row in rows]


def kernel(columns: Sequence[dict]) -> list[dict[int, object]]:
    """Basis of ``{c : sum_j c_j columns[j] = 0}`` as sparse dicts over column indices."""
    el = Eliminator()
    out = []
    for j, col in enumerate(columns):
        independent, _, tag = el.add(col, {j: Fraction(1)})
        if not independent:
            out.append(tag)
    return out


def independent_columns(columns: Sequence[dict]) -> list[int]:
    """Indices of a greedy maximal independent subset of ``columns``."""
    el = Eliminator()
    return [j for j, col in enumerate(columns) if el.add(col)[0]]


class Solver:
    """Express vectors in terms of a fixed list of columns."""

    def __init__(self, columns: Sequence[dict]):
        self.columns = list(columns)
        self._el = Eliminator()
        self.pivots = []
        for j, col in enumerate(self.columns):
            if self._el.add(col, {j: Fraction(1)})[0]:
                self.pivots.append(j)

    @property
    def rank(self) -> int:
        return self._el.rank

    def solve(self, vec: dict) -> dict[int, object]:
        residual, tag = self._el.reduce(vec)
        if residual:
            raise ValueError("vector is not in the column span")
        return {j: -c for j, c in tag.items() if c}


def matvec(columns: Sequence[dict], vec: dict) -> dict:
    """Apply the map whose j-th column is ``columns[j]`` to a sparse vector over column indices."""
    out: dict = {}
    for j, c in vec.items():
        add_into(out, columns[j], c)
    return out


def compose(a: Sequence[dict], b: Sequence[dict]) -> list[dict]:
    """Columns of ``a @ b``."""
    return [matvec(a, col) for col in b]
