"""Truncated weight modules of s_n and the operations that only need their matrices.

A :class:`WeightModule` tracks the weight spaces ``base + k`` for integer
offsets ``lo <= k <= hi``.  ``actions[g][k]`` is the matrix (list of sparse
columns) of generator ``g`` from offset ``k`` to ``k + shift(g)``; it is absent
when the target lies outside the window and is not known to vanish.  The flags
``bounded_above``/``bounded_below`` say that every weight space beyond the
window is zero, which makes the corresponding blocks exact zeros.
"""

from __future__ import annotations

from fractions import Fraction

from ..lie import E, F, H, SHIFT, Z, Generator, LieElement, SchrodingerAlgebra
from ..linalg import Eliminator, Solver, add_into, compose, kernel, rank
from ..scalars import as_fraction, sstr

__all__ = [
    "WeightModule",
    "assemble",
    "nilpotency_probe",
    "simple_quotient",
    "singular_vectors",
    "twist_by_tau",
    "twist_module",
]


class WeightModule:
    def __init__(self, algebra: SchrodingerAlgebra, base, lo: int, hi: int, dims: dict, actions: dict,
                 zdot, provenance: str, bounded_above: bool = False, bounded_below: bool = False,
                 labels: dict | None = None, meta: dict | None = None):
        self.algebra = algebra
        self.n = algebra.n
        self.base = base
        self.lo, self.hi = lo, hi
        self.dims = dims
        self.actions = actions
        self.zdot = zdot
        self.provenance = provenance
        self.bounded_above = bounded_above
        self.bounded_below = bounded_below
        self.labels = labels or {}
        self.meta = meta or {}

    def __repr__(self):
        return (f"WeightModule({self.provenance}, n={self.n}, base={sstr(self.base)}, "
                f"offsets=[{self.lo},{self.hi}])")

    # geometry

    def offsets(self) -> range:
        return range(self.lo, self.hi + 1)

    def weight(self, k: int):
        return self.base + k

    def offset_of(self, weight) -> int:
        d = as_fraction(weight - self.base)
        if d is None or d.denominator != 1:
            raise ValueError(f"weight {sstr(weight)} is not in base + Z")
        return int(d)

    def dim(self, k: int) -> int:
        if self.lo <= k <= self.hi:
            return self.dims[k]
        if self.known_zero(k):
            return 0
        raise KeyError(f"offset {k} is outside the tracked window")

    def known_zero(self, k: int) -> bool:
        return (self.bounded_above and k > self.hi) or (self.bounded_below and k < self.lo)

    def character(self) -> dict:
        return {k: self.dims[k] for k in self.offsets()}

    def support(self) -> list:
        return [self.weight(k) for k in self.offsets() if self.dims[k]]

    def total_dim(self) -> int:
        return sum(self.dims.values())

    # actions

    def block(self, g: Generator, k: int):
        """Matrix of ``g`` on offset ``k`` or None when it is not determined by the window."""
        if not self.lo <= k <= self.hi:
            return [] if self.known_zero(k) else None
        return self.actions.get(g, {}).get(k)

    def lie_block(self, a: LieElement, k: int):
        d = self.dims[k]
        cols = [dict() for _ in range(d)]
        for g, c in a.terms.items():
            b = self.block(g, k)
            if b is None:
                return None
            for col, src in zip(cols, b):
                add_into(col, src, c)
        return cols

    def apply(self, g: Generator, k: int, vec: dict):
        b = self.block(g, k)
        if b is None:
            return None
        out: dict = {}
        for j, c in vec.items():
            add_into(out, b[j], c)
        return out

    def is_known(self, g: Generator, k: int) -> bool:
        return self.block(g, k) is not None

    # checks

    def bracket_fidelity(self, pairs=None) -> dict:
        """action([a,b]) == action(a)action(b) - action(b)action(a) wherever all blocks are known."""
        alg = self.algebra
        checked = 0
        violations = []
        basis = alg.basis
        pairs = pairs if pairs is not None else [(a, b) for i, a in enumerate(basis) for b in basis[i + 1:]]
        for a, b in pairs:
            br = alg.element(alg.bracket_basis(a, b))
            for k in self.offsets():
                ta, tb = k + SHIFT[a.kind], k + SHIFT[b.kind]
                Bk, Ak = self.block(b, k), self.block(a, k)
                A2, B2 = self.block(a, tb), self.block(b, ta)
                if None in (Bk, Ak, A2, B2):
                    continue
                lhs = self.lie_block(br, k) if br.terms else [dict() for _ in range(self.dims[k])]
                if lhs is None:
                    continue
                ab = compose(A2, Bk) if self.dim(tb) else [dict() for _ in range(self.dims[k])]
                ba = compose(B2, Ak) if self.dim(ta) else [dict() for _ in range(self.dims[k])]
                rhs = []
                for x, y in zip(ab, ba):
                    col = dict(x)
                    add_into(col, y, -1)
                    rhs.append(col)
                checked += 1
                if lhs != rhs:
                    violations.append({"pair": f"[{a},{b}]", "offset": k})
        return {"passed": not violations, "checked": checked, "violations": violations[:20]}

    def diagonal_check(self) -> dict:
        """h acts by the labelled weight and z by zdot on every tracked space."""
        bad = []
        for k in self.offsets():
            for g, val in ((H, self.weight(k)), (Z, self.zdot)):
                want = [({j: val} if val else {}) for j in range(self.dims[k])]
                if self.block(g, k) != want:
                    bad.append(f"{g} at offset {k}")
        return {"passed": not bad, "violations": bad[:20]}

    def to_dict(self, with_matrices: bool = False) -> dict:
        out = {
            "provenance": self.provenance,
            "n": self.n,
            "base_weight": sstr(self.base),
            "zdot": sstr(self.zdot),
            "offsets": [self.lo, self.hi],
            "dims": {str(k): self.dims[k] for k in self.offsets()},
        }
        if with_matrices:
            out["actions"] = {
                str(g): {str(k): [{str(i): sstr(c) for i, c in col.items()} for col in cols]
                         for k, cols in blocks.items()}
                for g, blocks in self.actions.items()
            }
        return out


def assemble(algebra: SchrodingerAlgebra, base, lo: int, hi: int, labels_at, act, zdot, provenance: str,
             bounded_above: bool = False, bounded_below: bool = False, meta: dict | None = None) -> WeightModule:
    """Build the matrices of every generator from ``act(g, label) -> {label: coef}``.

    ``labels_at(k)`` lists the basis labels of offset ``k``.  Blocks mapping into
    a region known to vanish are computed as well, and must come out zero.
    """
    labels = {k: list(labels_at(k)) for k in range(lo, hi + 1)}
    index = {k: {lab: i for i, lab in enumerate(ls)} for k, ls in labels.items()}
    dims = {k: len(ls) for k, ls in labels.items()}
    actions: dict = {}
    for g in algebra.basis:
        blocks = {}
        for k in range(lo, hi + 1):
            t = k + SHIFT[g.kind]
            inside = lo <= t <= hi
            zero = (bounded_above and t > hi) or (bounded_below and t < lo)
            if not (inside or zero):
                continue
            cols = []
            for lab in labels[k]:
                img = act(g, lab)
                if inside:
                    try:
                        cols.append({index[t][l]: c for l, c in img.items()})
                    except KeyError as exc:
                        raise ValueError(f"{g} maps {lab} outside the weight space at offset {t}") from exc
                else:
                    if img:
                        raise ValueError(f"{g} maps {lab} into a weight space declared zero")
                    cols.append({})
            blocks[k] = cols
        actions[g] = blocks
    return WeightModule(algebra, base, lo, hi, dims, actions, zdot, provenance,
                        bounded_above, bounded_below, labels, meta)


def _remap(M: WeightModule, **changes) -> WeightModule:
    kw = dict(algebra=M.algebra, base=M.base, lo=M.lo, hi=M.hi, dims=M.dims, actions=M.actions,
              zdot=M.zdot, provenance=M.provenance, bounded_above=M.bounded_above,
              bounded_below=M.bounded_below, labels=M.labels, meta=dict(M.meta))
    kw.update(changes)
    return WeightModule(**kw)


def twist_by_tau(M: WeightModule) -> WeightModule:
    """Same spaces with ``g`` acting as ``tau(g)``; offsets (and weights) are negated."""
    alg = M.algebra
    actions: dict = {}
    for g in alg.basis:
        img = alg.tau(alg.element({g: Fraction(1)}))
        blocks = {}
        for k2 in range(-M.hi, -M.lo + 1):
            b = M.lie_block(img, -k2)
            if b is not None:
                blocks[k2] = b
        actions[g] = blocks
    return _remap(
        M, base=-M.base, lo=-M.hi, hi=-M.lo,
        dims={-k: d for k, d in M.dims.items()},
        actions=actions,
        provenance=f"tau({M.provenance})",
        bounded_above=M.bounded_below, bounded_below=M.bounded_above,
        labels={-k: ls for k, ls in M.labels.items()},
    )


def _f_inverse_solvers(M: WeightModule) -> dict:
    solvers = {}
    for k in range(M.lo + 2, M.hi + 1):
        blk = M.block(F, k)
        if blk is None or M.dims[k] != M.dims[k - 2] or rank(blk) != M.dims[k]:
            raise ValueError(f"f is not invertible from offset {k} to {k - 2}; twisting needs a dense window")
        solvers[k - 2] = Solver(blk)
    return solvers


def apply_localized(M: WeightModule, u, k: int, vec: dict, solvers: dict | None = None):
    """Act by a localized enveloping-algebra element on a vector at offset ``k``.

    Returns ``(offset, vector)`` or None if some intermediate step leaves the window.
    """
    if solvers is None:
        solvers = _f_inverse_solvers(M)
    loc = u.uea
    out: dict = {}
    target = None
    for m, c in u.terms.items():
        cur, kk = dict(vec), k
        for g, e in reversed(list(zip(loc.order, m))):
            for _ in range(abs(e)):
                if g == F and e < 0:
                    s = solvers.get(kk)
                    if s is None:
                        return None
                    cur, kk = s.solve(cur), kk + 2
                else:
                    cur = M.apply(g, kk, cur)
                    if cur is None:
                        return None
                    kk += SHIFT[g.kind]
        if target is not None and kk != target:
            raise ValueError("element is not homogeneous")
        target = kk
        add_into(out, cur, c)
    return target, out


def twist_module(M: WeightModule, b) -> WeightModule:
    """M^{gamma_b}: ``g`` acts as gamma_b(g); the h-weights move by 2b."""
    from ..localization import gamma_series

    solvers = _f_inverse_solvers(M)
    actions: dict = {}
    for g in M.algebra.basis:
        img = gamma_series(g, b, M.n)
        blocks = {}
        for k in M.offsets():
            cols = []
            for j in range(M.dims[k]):
                res = apply_localized(M, img, k, {j: Fraction(1)}, solvers)
                if res is None or not M.lo <= res[0] <= M.hi:
                    cols = None
                    break
                cols.append(res[1])
            if cols is not None and (M.dims[k] or M.lo <= k + SHIFT[g.kind] <= M.hi):
                blocks[k] = cols
        actions[g] = blocks
    return _remap(M, base=M.base + 2 * b, actions=actions, provenance=f"gamma_{sstr(b)}({M.provenance})")


def nilpotency_probe(M: WeightModule, g: Generator) -> str:
    """``locally-nilpotent``, ``injective`` or ``mixed`` from exact ranks in the window."""
    s = SHIFT[g.kind]
    nilpotent = True
    for k in M.offsets():
        if not M.dims[k]:
            continue
        cur = [{j: Fraction(1)} for j in range(M.dims[k])]
        kk = k
        steps = 0
        while True:
            if all(not c for c in cur):
                break
            if s == 0 and steps > M.dims[k]:
                nilpotent = False
                break
            blk = M.block(g, kk)
            if blk is None:
                nilpotent = False
                break
            cur = [M.apply(g, kk, c) for c in cur]
            kk += s
            steps += 1
            if M.known_zero(kk):
                cur = []
                break
        if not nilpotent:
            break
    if nilpotent:
        return "locally-nilpotent"
    injective = True
    for k in M.offsets():
        blk = M.block(g, k)
        if blk is None or not M.dims[k]:
            continue
        if rank(blk) != M.dims[k]:
            injective = False
            break
    return "injective" if injective else "mixed"


def _raising(alg: SchrodingerAlgebra) -> list[Generator]:
    return [E] + alg.x_gens


def singular_vectors(M: WeightModule, weight=None, *, offset: int | None = None) -> list[dict]:
    """Basis of the vectors of one weight space killed by e and every x(i)."""
    if (weight is None) == (offset is None):
        raise ValueError("give exactly one of weight or offset")
    k = offset if offset is not None else M.offset_of(weight)
    if not M.lo <= k <= M.hi:
        raise ValueError(f"offset {k} is not tracked")
    columns = [dict() for _ in range(M.dims[k])]
    for g in _raising(M.algebra):
        blk = M.block(g, k)
        if blk is None:
            raise ValueError(f"{g} at offset {k} leaves the window")
        for col, src in zip(columns, blk):
            for i, c in src.items():
                col[(str(g), i)] = c
    return kernel(columns)


def first_singular_offset(M: WeightModule) -> int | None:
    """Highest offset below the top carrying a singular vector, if any."""
    for k in range(M.hi - 1, M.lo - 1, -1):
        if singular_vectors(M, offset=k):
            return k
    return None


def radical(M: WeightModule) -> dict:
    """Per offset, an Eliminator spanning the largest submodule missing the top space.

    A vector belongs to it iff every raising word sends it to zero in the top
    space, so it is computed downward: v is in it at offset k iff e v and all
    x(i) v lie in it at their (higher) offsets.  Only raising operators are
    used, so the result is exact at every tracked offset.
    """
    if not M.bounded_above:
        raise ValueError("simple quotients need a module bounded above (highest weight)")
    rad = {}
    for k in range(M.hi, M.lo - 1, -1):
        el = Eliminator()
        if k < M.hi:
            columns = [dict() for _ in range(M.dims[k])]
            for g in _raising(M.algebra):
                t = k + SHIFT[g.kind]
                if t > M.hi:
                    continue
                for col, src in zip(columns, M.block(g, k)):
                    res, _ = rad[t].reduce(src)
                    for i, c in res.items():
                        col[(str(g), i)] = c
            for v in kernel(columns):
                el.add(v)
        rad[k] = el
    return rad


def simple_quotient(M: WeightModule) -> WeightModule:
    """M divided by its largest submodule meeting the top weight space trivially."""
    rad = radical(M)
    keep = {}
    for k in M.offsets():
        pivots = {p for p, _row, _tag in rad[k]._rows}
        keep[k] = [i for i in range(M.dims[k]) if i not in pivots]
    pos = {k: {i: q for q, i in enumerate(ks)} for k, ks in keep.items()}
    actions: dict = {}
    for g, blocks in M.actions.items():
        nb = {}
        for k, cols in blocks.items():
            t = k + SHIFT[g.kind]
            new = []
            for i in keep[k]:
                if M.lo <= t <= M.hi:
                    res, _ = rad[t].reduce(cols[i])
                    new.append({pos[t][j]: c for j, c in res.items()})
                else:
                    new.append({})
            nb[k] = new
        actions[g] = nb
    return _remap(
        M,
        dims={k: len(v) for k, v in keep.items()},
        actions=actions,
        provenance=f"simple({M.provenance})",
        labels={k: [M.labels[k][i] for i in ks] for k, ks in keep.items()} if M.labels else {},
    )


__all__ += ["apply_localized", "first_singular_offset", "radical"]
