"""Exact arithmetic in Q(i)(s), where s is a formal square root of a central charge.

An element is ``c0 + c1*I + c2*S + c3*I*S`` with rational ``c0..c3`` and the
single rewriting rule ``S**2 -> zdot`` (``zdot`` a Gaussian rational).  Plain
``int`` and ``Fraction`` values mix freely with :class:`Scalar`; most of the
package keeps rational data as ``Fraction`` and only reaches for ``Scalar``
when ``I`` or ``S`` is actually needed.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt

__all__ = [
    "Scalar",
    "I",
    "as_fraction",
    "as_nonneg_int",
    "gaussian_sqrt",
    "rational_sqrt",
    "simplify",
    "sqrt_of",
    "fstr",
    "sstr",
    "to_scalar",
]

_ZERO = Fraction(0)
_ONE = Fraction(1)


def _g_mul(a, b):
    return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])


def _g_add(a, b):
    return (a[0] + b[0], a[1] + b[1])


def _g_sub(a, b):
    return (a[0] - b[0], a[1] - b[1])


def _g_inv(a):
    d = a[0] * a[0] + a[1] * a[1]
    if d == 0:
        raise ZeroDivisionError("division by zero")
    return (a[0] / d, -a[1] / d)


def _g(x) -> tuple[Fraction, Fraction]:
    if isinstance(x, tuple):
        return (Fraction(x[0]), Fraction(x[1]))
    if isinstance(x, Scalar):
        if x.c[2] or x.c[3]:
            raise ValueError("central charge must lie in Q(i)")
        return (x.c[0], x.c[1])
    if isinstance(x, complex):
        raise TypeError("floating point values are not supported")
    return (Fraction(x), _ZERO)


class Scalar:
    """Immutable element of Q(i)[s]/(s^2 - zdot)."""

    __slots__ = ("c", "zdot")

    def __init__(self, c0=0, c1=0, c2=0, c3=0, zdot=None):
        if any(isinstance(v, (float, complex)) for v in (c0, c1, c2, c3)):
            raise TypeError("floating point values are not supported")
        c = (Fraction(c0), Fraction(c1), Fraction(c2), Fraction(c3))
        if zdot is not None:
            zdot = _g(zdot)
        elif c[2] or c[3]:
            raise ValueError("an S-component needs a defining zdot")
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "zdot", zdot)

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    # construction helpers

    @classmethod
    def gen_s(cls, zdot) -> Scalar:
        """The formal square root S of ``zdot``."""
        return cls(0, 0, 1, 0, zdot=zdot)

    def _parts(self):
        return (self.c[0], self.c[1]), (self.c[2], self.c[3])

    @property
    def has_s(self) -> bool:
        return bool(self.c[2] or self.c[3])

    def is_rational(self) -> bool:
        return not (self.c[1] or self.c[2] or self.c[3])

    # arithmetic

    def _join(self, other: Scalar):
        if self.zdot == other.zdot:
            return self.zdot
        if not other.has_s:
            return self.zdot if self.zdot is not None else other.zdot
        if not self.has_s:
            return other.zdot if other.zdot is not None else self.zdot
        raise ValueError(f"incompatible towers: S^2={self.zdot} vs S^2={other.zdot}")

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        z = self._join(other)
        return Scalar(*(p + q for p, q in zip(self.c, other.c)), zdot=z)

    __radd__ = __add__

    def __neg__(self):
        return Scalar(*(-p for p in self.c), zdot=self.zdot)

    def __pos__(self):
        return self

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        z = self._join(other)
        return Scalar(*(p - q for p, q in zip(self.c, other.c)), zdot=z)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        z = self._join(other)
        a, b = self._parts()
        c, d = other._parts()
        rat = _g_mul(a, c)
        if (b[0] or b[1]) and (d[0] or d[1]):
            rat = _g_add(rat, _g_mul(_g_mul(b, d), z))
        irr = _g_add(_g_mul(a, d), _g_mul(b, c))
        return Scalar(rat[0], rat[1], irr[0], irr[1], zdot=z)

    __rmul__ = __mul__

    def inverse(self) -> Scalar:
        a, b = self._parts()
        if not (a[0] or a[1] or b[0] or b[1]):
            raise ZeroDivisionError("division by zero")
        if not (b[0] or b[1]):
            ai = _g_inv(a)
            return Scalar(ai[0], ai[1], zdot=self.zdot)
        # (a + b s)(a - b s) = a^2 - b^2 zdot
        norm = _g_sub(_g_mul(a, a), _g_mul(_g_mul(b, b), self.zdot))
        if not (norm[0] or norm[1]):
            raise ZeroDivisionError(f"{self} is a zero divisor (zdot is a square in Q(i))")
        ni = _g_inv(norm)
        na = _g_mul(a, ni)
        nb = _g_mul(b, ni)
        return Scalar(na[0], na[1], -nb[0], -nb[1], zdot=self.zdot)

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        out = Scalar(1, zdot=self.zdot)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # comparison

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return False
        if self.c != other.c:
            return False
        return not self.has_s or self.zdot == other.zdot

    def __hash__(self):
        if self.is_rational():
            return hash(self.c[0])
        return hash((self.c, self.zdot if self.has_s else None))

    def __bool__(self):
        return any(self.c)

    def conjugate_s(self) -> Scalar:
        """The Galois conjugate S -> -S."""
        return Scalar(self.c[0], self.c[1], -self.c[2], -self.c[3], zdot=self.zdot)

    def __repr__(self):
        z = "" if self.zdot is None else f", zdot={sstr(Scalar(*self.zdot))}"
        return f"Scalar({sstr(self)}{z})"

    def __str__(self):
        return sstr(self)


def _coerce(x):
    if isinstance(x, Scalar):
        return x
    if isinstance(x, (int, Fraction)):
        return Scalar(x)
    return NotImplemented


I = Scalar(0, 1)


def to_scalar(x) -> Scalar:
    if isinstance(x, Scalar):
        return x
    if isinstance(x, (int, Fraction)):
        return Scalar(x)
    if isinstance(x, str):
        from .parsing import parse_scalar

        return parse_scalar(x)
    raise TypeError(f"cannot interpret {x!r} as an exact scalar")


def simplify(x):
    """Collapse a rational ``Scalar`` to ``Fraction``; everything else is returned as is."""
    if isinstance(x, Scalar) and x.is_rational():
        return x.c[0]
    if isinstance(x, int) and not isinstance(x, bool):
        return Fraction(x)
    return x


def as_fraction(x) -> Fraction | None:
    x = simplify(x)
    return x if isinstance(x, Fraction) else None


def as_nonneg_int(x) -> int | None:
    """``x`` as a python int when it lies in Z_{>=0}, else None."""
    q = as_fraction(x)
    if q is None or q.denominator != 1 or q < 0:
        return None
    return int(q)


def rational_sqrt(q) -> Fraction | None:
    q = Fraction(q)
    if q < 0:
        return None
    a, b = isqrt(q.numerator), isqrt(q.denominator)
    if a * a == q.numerator and b * b == q.denominator:
        return Fraction(a, b)
    return None


def gaussian_sqrt(p, q=0) -> tuple[Fraction, Fraction] | None:
    """A square root of ``p + q*i`` inside Q(i), or None."""
    p, q = Fraction(p), Fraction(q)
    if q == 0:
        r = rational_sqrt(p)
        if r is not None:
            return (r, _ZERO)
        r = rational_sqrt(-p)
        return None if r is None else (_ZERO, r)
    m = rational_sqrt(p * p + q * q)
    if m is None:
        return None
    x = rational_sqrt((p + m) / 2)
    if x is None or x == 0:
        return None
    return (x, q / (2 * x))


def sqrt_of(zdot):
    """A square root of ``zdot``.

    Returns an element of Q(i) when ``zdot`` is a square there (so all later
    linear algebra stays over a field); otherwise the formal generator S.
    """
    z = _g(simplify(zdot) if isinstance(zdot, Scalar) else zdot)
    r = gaussian_sqrt(*z)
    if r is not None:
        return simplify(Scalar(r[0], r[1]))
    return Scalar.gen_s(z)


def fstr(q: Fraction) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def sstr(x) -> str:
    """Exact text form ``c0 + c1*I + c2*S + c3*I*S`` (zero parts omitted)."""
    if isinstance(x, (int, Fraction)):
        return fstr(x)
    parts = []
    for coef, unit in zip(x.c, ("", "I", "S", "I*S")):
        if not coef:
            continue
        if unit == "":
            body = fstr(abs(coef))
        elif abs(coef) == 1:
            body = unit
        else:
            body = f"{fstr(abs(coef))}*{unit}"
        parts.append(("-" if coef < 0 else "+", body))
    if not parts:
        return "0"
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out
