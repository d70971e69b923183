"""Which family an irreducible Harish-Chandra s_n-module falls into, from how e and f act."""

from __future__ import annotations

from ..lie import E, F
from ..scalars import sstr
from .weight import WeightModule, nilpotency_probe

__all__ = ["BEHAVIORS", "ClassificationError", "classify", "classify_module"]

BEHAVIORS = ("locally-nilpotent", "injective", "mixed")
_ALIASES = {"nilpotent": "locally-nilpotent", "locally-nilpotent": "locally-nilpotent",
            "injective": "injective", "mixed": "mixed", None: None}


class ClassificationError(ValueError):
    pass


def _norm(b):
    try:
        return _ALIASES[b]
    except KeyError:
        raise ClassificationError(f"unknown behavior {b!r}; use nilpotent or injective") from None


def classify(zdot, e_behavior=None, f_behavior=None, n: int = 1) -> dict:
    e, f = _norm(e_behavior), _norm(f_behavior)
    t = "C[" + ",".join(f"t({i})" for i in range(1, n + 1)) + "]"
    if not zdot:
        return {
            "family": "TensorOfFiniteSoAndSl2",
            "description": "V (x) L with the Heisenberg part acting by zero; V a finite-dimensional simple "
                           "so_n-module, L a simple sl_2 weight module",
            "zdot": "0",
            "n": n,
        }
    if "mixed" in (e, f):
        raise ClassificationError("a mixed probe comes from truncation, not from a simple module")
    base = {"zdot": sstr(zdot), "n": n}
    if e == "locally-nilpotent" and f == "locally-nilpotent":
        raise ClassificationError("e and f both locally nilpotent forces finite dimension, impossible for zdot != 0")
    if e == "locally-nilpotent":
        return {"family": "HighestWeight", "components": ["V", "L_sl2(lambda)", t],
                "description": f"V (x) L_sl2(lambda) (x) {t}", **base}
    if f == "locally-nilpotent":
        return {"family": "LowestWeight", "components": ["V", "L_sl2(lambda)", t],
                "description": f"tau-twist of V (x) L_sl2(lambda) (x) {t}", **base}
    if e == "injective" and f == "injective":
        if n == 1:
            return {"family": "Dense", "components": ["L_sl2(k)", "t^lambda1 C[t,t^-1]"],
                    "description": "L_sl2(k) (x) t^lambda1 C[t,t^-1], lambda1 not an integer", **base}
        return {"family": "Impossible",
                "description": "e and f injective with zdot != 0 forces infinite-dimensional weight spaces "
                               "when n > 1", **base}
    raise ClassificationError("the behavior of both e and f is needed unless one is locally nilpotent")


def classify_module(M: WeightModule) -> dict:
    e, f = nilpotency_probe(M, E), nilpotency_probe(M, F)
    out = classify(M.zdot, e, f, M.n)
    out["probe"] = {"e": e, "f": f}
    return out
