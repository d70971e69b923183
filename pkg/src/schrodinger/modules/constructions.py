"""Concrete weight modules: Verma modules M(V, lam, zdot) and tensor modules V (x) N (x) L."""

from __future__ import annotations

import time
from fractions import Fraction
from functools import lru_cache

from ..lie import E, F, H, SHIFT, Z, SchrodingerAlgebra
from ..linalg import add_into, rank
from ..scalars import as_nonneg_int, sqrt_of, sstr
from ..uea import UEA, triangular_order
from ..weyl import PolyModuleVector, WeylRealization, act as weyl_act
from .sl2 import Sl2Module, sl2_simple, sl2_verma
from .so import SoModule, so_module
from .weight import WeightModule, assemble

__all__ = [
    "dense_module",
    "tensor_module",
    "verify_verma_factorization",
    "verma",
    "weak_compositions",
    "zero_charge_module",
]


def weak_compositions(total: int, parts: int):
    """Tuples of ``parts`` nonnegative integers summing to ``total`` (lexicographically descending)."""
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in weak_compositions(total - first, parts - 1):
            yield (first,) + rest


@lru_cache(maxsize=None)
def _triangular_uea(n: int) -> UEA:
    alg = SchrodingerAlgebra(n)
    return UEA(alg, triangular_order(alg))


def verma(V: SoModule, lam, zdot, depth: int) -> WeightModule:
    """M(V, lam, zdot) on the weights lam - k, 0 <= k <= depth.

    The basis vector ``(m, r, i)`` is ``f^m y(1)^r1 ... y(n)^rn (x) v_i``.  The
    action of g is read off the PBW expansion of ``g f^m y^r`` in the order
    lowering | Cartan | raising: terms with a raising factor die, h acts by
    lam, z by zdot and so_n through V.
    """
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    n = V.n
    alg = SchrodingerAlgebra(n)
    U = _triangular_uea(n).reduced(zdot)
    f_pos = U.pos[F]
    y_pos = [U.pos[y] for y in alg.y_gens]
    raising = [U.pos[g] for g in alg.positive]
    h_pos = U.pos[H]
    s_slots = [(U.pos[s], s) for s in alg.s_gens]
    s_slots.sort(reverse=True)

    def labels_at(k):
        out = []
        for m in range(-k // 2 + 1):
            for r in weak_compositions(-k - 2 * m, n):
                for i in range(V.dim):
                    out.append((m, r, i))
        return out

    def act(g, label):
        m, r, i = label
        mono = [0] * U.D
        mono[f_pos] = m
        for p, e in zip(y_pos, r):
            mono[p] = e
        out: dict = {}
        for res, c in U.left_mul(U.pos[g], tuple(mono)).items():
            if any(res[p] for p in raising):
                continue
            c = c * lam ** res[h_pos] if res[h_pos] else c
            vec = {i: Fraction(1)}
            for p, s in s_slots:
                for _ in range(res[p]):
                    nxt: dict = {}
                    for j, cj in vec.items():
                        add_into(nxt, V.act(s, j), cj)
                    vec = nxt
            key = (res[f_pos], tuple(res[p] for p in y_pos))
            for j, cj in vec.items():
                add_into(out, {key + (j,): c * cj})
        return out

    return assemble(alg, lam, -depth, 0, labels_at, act, zdot, "verma", bounded_above=True,
                    meta={"V": V.name, "lambda": sstr(lam), "depth": depth})


class _D1Part:
    """Bookkeeping for the D_n-module factor: labels, weight offsets and base weight."""

    def __init__(self, kind, n: int, lam1=None):
        self.kind, self.n, self.lam1 = kind, n, lam1
        if kind in ("twisted", "quotient") and n != 1:
            raise ValueError(f"{kind} modules exist only for n=1")
        if kind == "twisted":
            PolyModuleVector("twisted", 1, {}, lam1)  # validates lam1
        half_n = Fraction(n, 2)
        bases = {None: Fraction(0), "poly": -half_n, "quotient": -half_n}
        if kind == "twisted":
            bases[kind] = -half_n - lam1
        if kind not in bases:
            raise ValueError(f"unknown D-module kind {kind!r}")
        self.base = bases[kind]

    def offset_range(self):
        return {None: (0, 0), "poly": (None, 0), "twisted": (None, None), "quotient": (1, None)}[self.kind]

    def labels_at(self, off: int) -> list[tuple]:
        if self.kind is None:
            return [()] if off == 0 else []
        if self.kind == "poly":
            return list(weak_compositions(-off, self.n)) if off <= 0 else []
        if self.kind == "twisted":
            return [(-off,)]
        return [(-off,)] if off >= 1 else []

    def describe(self) -> str:
        if self.kind is None:
            return "C"
        if self.kind == "poly":
            return "C[" + ",".join(f"t({i})" for i in range(1, self.n + 1)) + "]"
        if self.kind == "twisted":
            return f"t^({sstr(self.lam1)}) C[t,t^-1]"
        return "C[t,t^-1]/C[t]"


def tensor_module(V: SoModule, N: Sl2Module, L, zdot, lo: int, hi: int, lam1=None, s=None) -> WeightModule:
    """V (x) N (x) L with s_n acting through the realization g -> g (x) 1 + 1 (x) theta(g).

    ``L`` is ``"poly"``, ``"twisted"`` (with ``lam1``), ``"quotient"`` or None
    for the one-dimensional factor on which the Heisenberg part acts by zero
    (only meaningful for zdot = 0).
    """
    n = V.n
    alg = SchrodingerAlgebra(n)
    D = _D1Part(L, n, lam1)
    if L is None and zdot:
        raise ValueError("a trivial D-factor only carries zdot = 0")
    if s is None:
        s = sqrt_of(zdot)
    R = WeylRealization(alg, s) if L is not None else None
    nlo, nhi = N.offset_range()
    llo, lhi = D.offset_range()
    # the flags promise that everything outside the window vanishes
    above = nhi is not None and lhi is not None and hi >= nhi + lhi
    below = nlo is not None and llo is not None and lo <= nlo + llo
    theta_cache: dict = {}

    def theta_on(g, label):
        key = (g, label)
        if key not in theta_cache:
            v = PolyModuleVector(L, n, {label: Fraction(1)}, lam1)
            theta_cache[key] = weyl_act(R.theta_gen(g), v).coeffs
        return theta_cache[key]

    def labels_at(k):
        a = nlo if nlo is not None else (k - lhi if lhi is not None else None)
        a = max(a, k - lhi) if (a is not None and lhi is not None) else a
        b = nhi if nhi is not None else (k - llo if llo is not None else None)
        b = min(b, k - llo) if (b is not None and llo is not None) else b
        if a is None or b is None:
            raise ValueError("both factors unbounded in the same direction: weight spaces are infinite")
        out = []
        for noff in range(b, a - 1, -1):
            for w in N.labels_at(noff):
                for lab in D.labels_at(k - noff):
                    for i in range(V.dim):
                        out.append((i, w, lab))
        return out

    def act(g, label):
        i, w, lab = label
        out: dict = {}
        if g.kind == "s":
            for j, c in V.act(g, i).items():
                add_into(out, {(j, w, lab): c})
        elif g in (E, F, H):
            for w2, c in N.act(g, w).items():
                add_into(out, {(i, w2, lab): c})
        elif g == Z:
            return {label: zdot} if zdot else {}
        if L is not None:
            for lab2, c in theta_on(g, lab).items():
                add_into(out, {(i, w, lab2): c})
        return out

    return assemble(alg, N.base + D.base, lo, hi, labels_at, act, zdot,
                    f"tensor[{V.name} (x) {N.describe()} (x) {D.describe()}]",
                    bounded_above=above, bounded_below=below,
                    meta={"V": V.name, "N": N.describe(), "L": D.describe()})


def verma_tensor_side(V: SoModule, lam, zdot, depth: int, simple: bool = False) -> WeightModule:
    """V (x) M_sl2(lam + n/2) (x) C[t], or L_sl2 in place of M_sl2 when ``simple``."""
    mu = lam + Fraction(V.n, 2)
    N = sl2_simple(mu) if simple else sl2_verma(mu)
    return tensor_module(V, N, "poly", zdot, -depth, 0)


def _psi(M: WeightModule, T: WeightModule) -> dict:
    """psi(f^m y^r (x) v) = f^m y^r (v (x) w (x) 1), as vectors of T per offset."""
    n = M.n
    alg = M.algebra
    top_index = {lab[0]: idx for idx, lab in enumerate(T.labels[0])
                 if lab[1] == 0 and lab[2] == (0,) * n}
    out = {}
    for k in M.offsets():
        cols = []
        for m, r, i in M.labels[k]:
            vec, kk = {top_index[i]: Fraction(1)}, 0
            for y, e in reversed(list(zip(alg.y_gens, r))):
                for _ in range(e):
                    vec, kk = T.apply(y, kk, vec), kk - 1
            for _ in range(m):
                vec, kk = T.apply(F, kk, vec), kk - 2
            cols.append(vec)
        out[k] = cols
    return out


def verify_verma_factorization(V: SoModule, lam, zdot, depth: int) -> dict:
    """Compare M(V, lam, zdot) with V (x) M_sl2(lam + n/2) (x) C[t] up to the given depth."""
    if not zdot:
        raise ValueError("the factorization needs zdot != 0")
    start = time.perf_counter()
    M = verma(V, lam, zdot, depth)
    T = verma_tensor_side(V, lam, zdot, depth)
    rows = [{"k": -k, "verma": M.dims[k], "tensor": T.dims[k]} for k in range(0, -depth - 1, -1)]
    dim_mismatch = next((r for r in rows if r["verma"] != r["tensor"]), None)
    psi = _psi(M, T)
    psi_bijective = all(rank(psi[k]) == M.dims[k] for k in M.offsets())
    first_bad = None
    checked = 0
    for g in M.algebra.basis:
        for k in M.offsets():
            blk = M.block(g, k)
            if blk is None or not (M.lo <= k + SHIFT[g.kind] <= M.hi):
                continue
            t = k + SHIFT[g.kind]
            for j, col in enumerate(blk):
                lhs: dict = {}
                for i, c in col.items():
                    add_into(lhs, psi[t][i], c)
                rhs = T.apply(g, k, psi[k][j])
                checked += 1
                if lhs != rhs and first_bad is None:
                    first_bad = {"generator": str(g), "offset": k, "basis": str(M.labels[k][j])}
    return {
        "n": V.n,
        "V": V.name,
        "lambda": sstr(lam),
        "zdot": sstr(zdot),
        "depth": depth,
        "dims": rows,
        "dims_match": dim_mismatch is None,
        "first_dim_mismatch": dim_mismatch,
        "psi_bijective": psi_bijective,
        "psi_intertwines": first_bad is None,
        "first_generator_mismatch": first_bad,
        "checked": checked,
        "passed": dim_mismatch is None and psi_bijective and first_bad is None,
        "seconds": round(time.perf_counter() - start, 3),
    }


def dense_module(k: int, lam1, zdot, window: int = 12) -> WeightModule:
    """L_sl2(k) (x) t^lam1 C[t, t^-1] for s_1, on ``window`` consecutive weights."""
    k = as_nonneg_int(k)
    if k is None:
        raise ValueError("k must be a nonnegative integer")
    if not zdot:
        raise ValueError("dense modules of this family need zdot != 0")
    lo = -(window // 2)
    M = tensor_module(so_module("trivial", 1), sl2_simple(k), "twisted", zdot, lo, lo + window - 1, lam1=lam1)
    M.provenance = "dense"
    M.meta.update({"k": k, "lam1": sstr(lam1)})
    return M


def zero_charge_module(V: SoModule, N: Sl2Module, lo: int, hi: int) -> WeightModule:
    """V (x) N with the Heisenberg part acting by zero."""
    return tensor_module(V, N, None, Fraction(0), lo, hi)
