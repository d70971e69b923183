"""Weight modules of sl_2 = span(e, f, h), described by labels and explicit actions.

Labels are integers.  For ``verma``/``simple`` the label ``i`` is ``f^i w`` of
weight ``mu - 2i``; for ``dense`` the label ``j`` is ``v_{mu0 + 2j}`` with

    f v_m = v_{m-2},    e v_m = (c - (m+1)^2)/4 v_{m+2},    h v_m = m v_m,

where ``c`` is the Casimir value ``(h+1)^2 + 4fe``.
"""

from __future__ import annotations

from fractions import Fraction

from ..lie import E, F, H
from ..scalars import as_nonneg_int, sstr

__all__ = ["Sl2Module", "sl2_dense", "sl2_simple", "sl2_verma"]


class Sl2Module:
    def __init__(self, kind: str, mu, casimir=None):
        if kind not in ("verma", "simple", "dense"):
            raise ValueError(f"unknown sl2 module kind {kind!r}")
        self.kind = kind
        self.mu = mu
        self.casimir = casimir
        self.top = None
        if kind == "simple":
            m = as_nonneg_int(mu)
            self.top = m  # None: the simple module is the Verma module
        if kind == "dense":
            if casimir is None:
                raise ValueError("dense modules need a Casimir value")

    @property
    def base(self):
        return self.mu

    def offset_range(self) -> tuple:
        """(lowest, highest) label offsets; None means unbounded."""
        if self.kind == "dense":
            return (None, None)
        if self.top is not None:
            return (-2 * self.top, 0)
        return (None, 0)

    def labels_at(self, offset: int) -> list[int]:
        if offset % 2:
            return []
        lo, hi = self.offset_range()
        if (lo is not None and offset < lo) or (hi is not None and offset > hi):
            return []
        return [-offset // 2] if self.kind != "dense" else [offset // 2]

    def offset(self, label: int) -> int:
        return 2 * label if self.kind == "dense" else -2 * label

    def weight(self, label: int):
        return self.mu + self.offset(label)

    def act(self, g, label: int) -> dict:
        if self.kind == "dense":
            m = self.weight(label)
            if g == F:
                return {label - 1: Fraction(1)}
            if g == E:
                c = (self.casimir - (m + 1) ** 2) / 4
                return {label + 1: c} if c else {}
            if g == H:
                return {label: m} if m else {}
            return {}
        i = label
        if g == F:
            if self.top is not None and i + 1 > self.top:
                return {}
            return {i + 1: Fraction(1)}
        if g == E:
            c = i * (self.mu - i + 1)
            return {i - 1: c} if i and c else {}
        if g == H:
            m = self.weight(i)
            return {i: m} if m else {}
        return {}

    def is_dense_injective_at(self, label: int) -> bool:
        m = self.weight(label)
        return self.casimir != (m + 1) ** 2

    def describe(self) -> str:
        if self.kind == "dense":
            return f"dense(mu0={sstr(self.mu)}, casimir={sstr(self.casimir)})"
        if self.kind == "simple" and self.top is not None:
            return f"L_sl2({sstr(self.mu)})"
        return f"M_sl2({sstr(self.mu)})"

    def __repr__(self):
        return f"Sl2Module({self.describe()})"


def sl2_verma(mu) -> Sl2Module:
    return Sl2Module("verma", mu)


def sl2_simple(mu) -> Sl2Module:
    """L(mu): finite-dimensional for mu in Z_{>=0}, equal to M(mu) otherwise."""
    return Sl2Module("simple", mu)


def sl2_dense(mu0, casimir) -> Sl2Module:
    return Sl2Module("dense", mu0, casimir)
