"""Command-line front end: ``schrodinger <command> [options]``."""

from __future__ import annotations

import argparse
import csv
import io
import json
import re
import sys
from fractions import Fraction

from .lie import E, F, H, SchrodingerAlgebra, verify_structure
from .localization import gamma_properties_check, gamma_series
from .modules import (classify, dense_module, nilpotency_probe, simple_quotient, singular_vectors,
                      so_module, verma, verma_tensor_side)
from .modules.classify import ClassificationError
from .parsing import ParseError, parse_scalar
from .scalars import sqrt_of, sstr
from .uea import UEA
from .verify import run_all
from .weyl import WeylRealization


def _charge(args, required: bool = False):
    """(s, zdot) from --s / --zdot; --s wins when both are given."""
    if args.s is not None:
        s = parse_scalar(args.s)
        zdot = s * s
        if args.zdot is not None and parse_scalar(args.zdot, zdot) != zdot:
            raise SystemExit("--s and --zdot disagree")
        return s, zdot
    if args.zdot is not None:
        zdot = parse_scalar(args.zdot)
        return sqrt_of(zdot), zdot
    if required:
        raise SystemExit("this command needs --zdot or --s")
    return None, None


def _emit(args, text: str) -> None:
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _csv(rows: list[list]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    for r in rows:
        w.writerow(r)
    return buf.getvalue()


def _json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"


def _check_cfg(args):
    if args.n < 1:
        raise SystemExit("--n must be at least 1")
    if args.depth < 0:
        raise SystemExit("--depth must be nonnegative")


def cmd_verify_axioms(args) -> int:
    alg = SchrodingerAlgebra(args.n, {(E, F): {H: -1}} if args.inject_fault else None)
    rep = verify_structure(args.n, alg)
    _emit(args, _json(rep.as_dict()))
    return 0 if rep.passed else 1


def cmd_normal_order(args) -> int:
    _, zdot = _charge(args)
    uea = UEA(SchrodingerAlgebra(args.n), localized=args.localized)
    if zdot is not None:
        uea = uea.reduced(zdot)
    _emit(args, f"{uea.parse(args.expr)}\n")
    return 0


def cmd_theta(args) -> int:
    s, zdot = _charge(args, required=True)
    R = WeylRealization(SchrodingerAlgebra(args.n), s)
    u = R.reduced_uea().parse(args.expr)
    out = R.phi_uea(u) if args.phi else R.theta_uea(u)
    _emit(args, f"{out}\n")
    return 0


def cmd_gamma(args) -> int:
    b = parse_scalar(args.b)
    if args.check:
        rep = gamma_properties_check(b, parse_scalar(args.b2), args.n)
        _emit(args, _json(rep))
        return 0 if rep["passed"] else 1
    g = SchrodingerAlgebra(args.n).gen(*_split_gen(args.gen))
    (gen,) = g.terms
    _emit(args, f"{gamma_series(gen, b, args.n)}\n")
    return 0


def _split_gen(text: str):
    text = text.strip()
    if "(" in text:
        name, rest = text.split("(", 1)
        return (name,) + tuple(int(a) for a in rest.rstrip(")").split(","))
    return (text,)


def _weight_rows(M) -> list[list]:
    rows = [["weight", "offset", "dimension"]]
    for k in range(M.hi, M.lo - 1, -1):
        rows.append([sstr(M.weight(k)), k, M.dims[k]])
    return rows


def _emit_table(args, rows, extra=None) -> None:
    if args.format == "json":
        header, body = rows[0], rows[1:]
        obj = {"rows": [dict(zip(header, r)) for r in body]}
        if extra:
            obj.update(extra)
        _emit(args, _json(obj))
    else:
        _emit(args, _csv(rows))


def cmd_verma(args) -> int:
    _check_cfg(args)
    _, zdot = _charge(args, required=True)
    M = verma(so_module(args.V, args.n), parse_scalar(args.lam), zdot, args.depth)
    if args.simple:
        M = simple_quotient(M)
    _emit_table(args, _weight_rows(M), {"provenance": M.provenance})
    return 0


def cmd_singular(args) -> int:
    _check_cfg(args)
    _, zdot = _charge(args, required=True)
    lam = parse_scalar(args.lam)
    M = verma(so_module(args.V, args.n), lam, zdot, args.depth)
    offsets = [M.offset_of(parse_scalar(args.weight))] if args.weight else list(range(M.hi, M.lo - 1, -1))
    found = []
    for k in offsets:
        vecs = singular_vectors(M, offset=k)
        if vecs and (k < M.hi or args.weight):
            found.append({
                "weight": sstr(M.weight(k)),
                "offset": k,
                "vectors": [{_label(M.labels[k][j]): sstr(c) for j, c in sorted(v.items())} for v in vecs],
            })
    _emit(args, _json({"n": args.n, "V": args.V, "lambda": sstr(lam), "zdot": sstr(zdot),
                       "depth": args.depth, "singular": found}))
    return 0


def _label(lab) -> str:
    m, r, i = lab
    parts = [("f" if m == 1 else f"f^{m}")] if m else []
    parts += [(f"y({k + 1})" if e == 1 else f"y({k + 1})^{e}") for k, e in enumerate(r) if e]
    return (" ".join(parts) or "1") + f" (x) v{i + 1}"


def cmd_character_table(args) -> int:
    _check_cfg(args)
    _, zdot = _charge(args, required=True)
    if not zdot:
        raise SystemExit("the tensor side needs zdot != 0")
    lam = parse_scalar(args.lam)
    V = so_module(args.V, args.n)
    M = verma(V, lam, zdot, args.depth)
    if args.simple:
        M = simple_quotient(M)
    T = verma_tensor_side(V, lam, zdot, args.depth, simple=args.simple)
    rows = [["k", "dim_M", "dim_tensor", "equal"]]
    for k in range(args.depth + 1):
        a, b = M.dims[-k], T.dims[-k]
        rows.append([k, a, b, str(a == b).lower()])
    _emit_table(args, rows)
    return 0 if all(r[3] == "true" for r in rows[1:]) else 1


def cmd_classify(args) -> int:
    _, zdot = _charge(args)
    if zdot is None:
        raise SystemExit("classify needs --zdot or --s")
    try:
        out = classify(zdot, args.e, args.f, args.n)
    except ClassificationError as exc:
        _emit(args, _json({"error": str(exc)}))
        return 2
    _emit(args, _json(out))
    return 0


def cmd_dense(args) -> int:
    _, zdot = _charge(args, required=True)
    if args.n != 1:
        raise SystemExit("dense modules of this family exist for n=1 only")
    M = dense_module(args.k, parse_scalar(args.lam1), zdot, args.window)
    probe = {"e": nilpotency_probe(M, E), "f": nilpotency_probe(M, F)}
    _emit_table(args, _weight_rows(M), {"probe": probe})
    return 0


def cmd_verify_all(args) -> int:
    _check_cfg(args)
    s, zdot = _charge(args)
    if zdot is None:
        s, zdot = Fraction(1), Fraction(1)
    rep = run_all(args.n, zdot, args.depth, seed=args.seed, inject_fault=args.inject_fault, s=s)
    _emit(args, _json(rep))
    return 0 if rep["passed"] else 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, default=1, help="rank n of s_n")
    common.add_argument("--s", help="square root of the central charge (zdot = s^2)")
    common.add_argument("--zdot", help="central charge, e.g. 1, 2, 1/2")
    common.add_argument("--depth", type=int, default=6, help="truncation depth")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized checks")
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--out", help="write output to this file instead of stdout")

    p = argparse.ArgumentParser(prog="schrodinger", description="Exact computations with the Schrodinger algebra s_n.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("verify-axioms", parents=[common], help="bracket table vs matrices and Jacobi")
    c.add_argument("--inject-fault", action="store_true")
    c.set_defaults(func=cmd_verify_axioms)

    c = sub.add_parser("normal-order", parents=[common], help="PBW normal form of a product")
    c.add_argument("expr", help="e.g. 'e f^2 x(1)' or 'x(1) finv'")
    c.add_argument("--localized", action="store_true", help="allow finv (f^-1)")
    c.set_defaults(func=cmd_normal_order)

    c = sub.add_parser("theta", parents=[common], help="image in the Weyl algebra")
    c.add_argument("expr")
    c.add_argument("--phi", action="store_true", help="image in U(so_n + sl_2) (x) D_n instead")
    c.set_defaults(func=cmd_theta)

    c = sub.add_parser("gamma", parents=[common], help="twisting automorphism gamma_b")
    c.add_argument("--b", required=True)
    c.add_argument("--gen", default="e")
    c.add_argument("--check", action="store_true", help="run the full property check")
    c.add_argument("--b2", default="1/3", help="second parameter for the cocycle check")
    c.set_defaults(func=cmd_gamma)

    for name, func, hlp in (("verma", cmd_verma, "weight-space dimensions of M(V, lambda, zdot)"),
                            ("singular", cmd_singular, "singular vectors of M(V, lambda, zdot)"),
                            ("character-table", cmd_character_table, "Verma side vs tensor side")):
        c = sub.add_parser(name, parents=[common], help=hlp)
        c.add_argument("--V", default="trivial", choices=("trivial", "natural", "plus", "minus"))
        c.add_argument("--lambda", dest="lam", required=True)
        if name != "singular":
            c.add_argument("--simple", action="store_true", help="use the simple quotient")
        else:
            c.add_argument("--weight", help="restrict to one weight")
        c.set_defaults(func=func)

    c = sub.add_parser("classify", parents=[common], help="family of an irreducible Harish-Chandra module")
    c.add_argument("--e", choices=("nilpotent", "locally-nilpotent", "injective", "mixed"))
    c.add_argument("--f", choices=("nilpotent", "locally-nilpotent", "injective", "mixed"))
    c.set_defaults(func=cmd_classify)

    c = sub.add_parser("dense", parents=[common], help="dense family L_sl2(k) (x) t^lam1 C[t, t^-1]")
    c.add_argument("--k", type=int, default=0)
    c.add_argument("--lam1", default="1/2")
    c.add_argument("--window", type=int, default=12)
    c.set_defaults(func=cmd_dense)

    c = sub.add_parser("verify-all", parents=[common], help="every structural check; exit 0 iff all pass")
    c.add_argument("--inject-fault", action="store_true", help="corrupt [e,f] to exercise failure reporting")
    c.set_defaults(func=cmd_verify_all)
    return p


def _glue_negative_values(argv: list[str]) -> list[str]:
    """``--lambda -1/2`` -> ``--lambda=-1/2`` so argparse does not read the value as a flag."""
    out: list[str] = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        nxt = argv[i + 1] if i + 1 < len(argv) else ""
        if tok.startswith("--") and "=" not in tok and re.match(r"-[\d(.]", nxt):
            out.append(f"{tok}={nxt}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    args = build_parser().parse_args(_glue_negative_values(argv))
    try:
        return args.func(args)
    except (ParseError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
