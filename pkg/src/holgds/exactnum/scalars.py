"""Exact scalars: rationals, Gaussian rationals and quadratic extensions.

Rationals are plain :class:`fractions.Fraction` (or ``int``).  Gaussian
rationals get a small immutable class that interoperates with both, and
values in Q(sqrt d) get :class:`QuadExt`.
"""
from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational

from ..errors import MixedRadicand, ScalarFormatError, UnsupportedScalarPair

Rat = Fraction

_RAT_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")


def _rat(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)) and not isinstance(x, bool):
        return Fraction(x)
    raise TypeError(f"not a rational: {x!r}")


class GaussRat:
    """A Gaussian rational ``re + im*i`` with rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", _rat(re))
        object.__setattr__(self, "im", _rat(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussRat is immutable")

    @staticmethod
    def coerce(x) -> "GaussRat":
        if isinstance(x, GaussRat):
            return x
        if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
            return GaussRat(x, 0)
        raise TypeError(f"cannot coerce {x!r} to GaussRat")

    @property
    def is_real(self) -> bool:
        return self.im == 0

    def conjugate(self) -> "GaussRat":
        return GaussRat(self.re, -self.im)

    def norm(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def __add__(self, other):
        try:
            o = GaussRat.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussRat(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussRat(-self.re, -self.im)

    def __pos__(self):
        return self

    def __sub__(self, other):
        try:
            o = GaussRat.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussRat(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        try:
            o = GaussRat.coerce(other)
        except TypeError:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        try:
            o = GaussRat.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussRat(self.re * o.re - self.im * o.im,
                        self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        try:
            o = GaussRat.coerce(other)
        except TypeError:
            return NotImplemented
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("GaussRat division by zero")
        p = self * o.conjugate()
        return GaussRat(p.re / n, p.im / n)

    def __rtruediv__(self, other):
        try:
            o = GaussRat.coerce(other)
        except TypeError:
            return NotImplemented
        return o / self

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return (GaussRat(1) / self) ** (-k)
        result = GaussRat(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, GaussRat):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return self.re != 0 or self.im != 0

    def __repr__(self):
        return f"GaussRat({self.re}, {self.im})"

    def __str__(self):
        return scalar_text(self)


def normalize(x):
    """Collapse ``x`` to the narrowest exact type: int, Fraction or GaussRat."""
    if isinstance(x, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else x
    if isinstance(x, GaussRat):
        if x.im == 0:
            return normalize(x.re)
        return x
    if isinstance(x, QuadExt):
        if x.b == 0:
            return normalize(x.a)
        return x
    raise TypeError(f"unsupported scalar {x!r}")


def is_rational(x) -> bool:
    x = normalize(x)
    return isinstance(x, (int, Fraction))


def scalar_key(x):
    """Total order key used for deterministic sorting of Gaussian rationals."""
    g = GaussRat.coerce(normalize(x)) if not isinstance(x, GaussRat) else x
    return (g.re, g.im)


# -- text format ------------------------------------------------------------

def parse_rational(text: str) -> Fraction:
    m = _RAT_RE.match(text)
    if not m:
        raise ScalarFormatError(f"malformed rational {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise ScalarFormatError(f"zero denominator in {text!r}")
    return Fraction(num, den)


def parse_scalar(obj):
    """Parse the scalar text format.  Floats are rejected outright."""
    if isinstance(obj, bool) or isinstance(obj, float):
        raise ScalarFormatError(f"inexact scalar {obj!r}")
    if isinstance(obj, int):
        return obj
    if isinstance(obj, str):
        return normalize(parse_rational(obj))
    if isinstance(obj, dict):
        if set(obj) != {"re", "im"}:
            raise ScalarFormatError(f"Gaussian rational needs exactly re/im keys: {obj!r}")
        re_ = parse_scalar(obj["re"])
        im_ = parse_scalar(obj["im"])
        if not (is_rational(re_) and is_rational(im_)):
            raise ScalarFormatError(f"nested complex value in {obj!r}")
        return normalize(GaussRat(re_, im_))
    raise ScalarFormatError(f"unsupported scalar encoding {obj!r}")


def _fmt_rat(q: Fraction) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def format_scalar(x):
    """Inverse of :func:`parse_scalar` (strings for reals, a dict otherwise)."""
    x = normalize(x)
    if isinstance(x, (int, Fraction)):
        return _fmt_rat(x)
    if isinstance(x, GaussRat):
        return {"re": _fmt_rat(x.re), "im": _fmt_rat(x.im)}
    raise TypeError(f"cannot format {x!r}")


def scalar_text(x) -> str:
    """One-line human/machine readable rendering (``a+bi`` for complex)."""
    x = normalize(x)
    if isinstance(x, GaussRat):
        sign = "+" if x.im >= 0 else "-"
        return f"{_fmt_rat(x.re)}{sign}{_fmt_rat(abs(x.im))}i"
    if isinstance(x, QuadExt):
        return str(x)
    return _fmt_rat(x)


# -- quadratic extensions ------------------------------------------------------

def squarefree_part(n: int) -> tuple[int, int]:
    """Write ``n = s * r**2`` with ``s`` square-free; returns ``(s, r)``."""
    if n == 0:
        return 0, 0
    sign = -1 if n < 0 else 1
    n = abs(n)
    s, r = 1, 1
    p = 2
    while p * p <= n:
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        if e:
            r *= p ** (e // 2)
            if e % 2:
                s *= p
        p += 1 if p == 2 else 2
    s *= n
    return sign * s, r


class QuadExt:
    """``a + b*sqrt(d)`` with rational ``a, b`` and square-free integer ``d``."""

    __slots__ = ("a", "b", "d")

    def __init__(self, a=0, b=0, d: int = 2):
        if d == 1 or d == 0 or squarefree_part(d)[1] != 1:
            raise ValueError(f"radicand must be square-free and not 0/1: {d}")
        object.__setattr__(self, "a", _rat(a))
        object.__setattr__(self, "b", _rat(b))
        object.__setattr__(self, "d", d)

    def __setattr__(self, name, value):
        raise AttributeError("QuadExt is immutable")

    def _lift(self, other) -> "QuadExt":
        if isinstance(other, QuadExt):
            if other.d != self.d:
                raise MixedRadicand(f"sqrt({self.d}) vs sqrt({other.d})")
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return QuadExt(other, 0, self.d)
        raise TypeError(f"cannot combine QuadExt with {other!r}")

    def conjugate(self) -> "QuadExt":
        return QuadExt(self.a, -self.b, self.d)

    def norm(self) -> Fraction:
        return self.a * self.a - self.d * self.b * self.b

    def trace(self) -> Fraction:
        return 2 * self.a

    def __add__(self, other):
        try:
            o = self._lift(other)
        except TypeError:
            return NotImplemented
        return QuadExt(self.a + o.a, self.b + o.b, self.d)

    __radd__ = __add__

    def __neg__(self):
        return QuadExt(-self.a, -self.b, self.d)

    def __sub__(self, other):
        try:
            o = self._lift(other)
        except TypeError:
            return NotImplemented
        return QuadExt(self.a - o.a, self.b - o.b, self.d)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            o = self._lift(other)
        except TypeError:
            return NotImplemented
        return QuadExt(self.a * o.a + self.d * self.b * o.b,
                       self.a * o.b + self.b * o.a, self.d)

    __rmul__ = __mul__

    def inverse(self) -> "QuadExt":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("QuadExt inverse of zero")
        return QuadExt(self.a / n, -self.b / n, self.d)

    def __truediv__(self, other):
        try:
            o = self._lift(other)
        except TypeError:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self._lift(other) * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = QuadExt(1, 0, self.d)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, QuadExt):
            if self.b == 0 and other.b == 0:
                return self.a == other.a
            return (self.d, self.a, self.b) == (other.d, other.a, other.b)
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    def __bool__(self):
        return self.a != 0 or self.b != 0

    def __repr__(self):
        return f"QuadExt({self.a}, {self.b}, d={self.d})"

    def __str__(self):
        return f"{_fmt_rat(self.a)}{'+' if self.b >= 0 else '-'}{_fmt_rat(abs(self.b))}*sqrt({self.d})"


# -- root-of-unity decision -----------------------------------------------------

# minimal polynomials x^2 + c1 x + c0 of the degree-2 roots of unity
_CYCLOTOMIC_DEG2 = {(0, 1), (1, 1), (-1, 1)}


def ratio_root_of_unity(lambda1, lambda2) -> bool:
    """Decide whether ``lambda1 / lambda2`` is a root of unity.

    Supports ratios of algebraic degree at most two: rational, Gaussian
    rational, or elements of one quadratic field Q(sqrt d).
    """
    if lambda2 == 0:
        raise ZeroDivisionError("lambda2 must be nonzero")
    quad = [x for x in (lambda1, lambda2) if isinstance(x, QuadExt)]
    gauss = [x for x in (lambda1, lambda2) if isinstance(x, GaussRat)]
    for x in (lambda1, lambda2):
        if not isinstance(x, (int, Fraction, GaussRat, QuadExt)) or isinstance(x, bool):
            raise UnsupportedScalarPair(f"unsupported scalar {x!r}")
    if quad and gauss:
        if any(g.im != 0 for g in gauss):
            raise UnsupportedScalarPair("mixing Q(i) and Q(sqrt d) exceeds degree 2")
        lambda1 = lambda1.re if isinstance(lambda1, GaussRat) else lambda1
        lambda2 = lambda2.re if isinstance(lambda2, GaussRat) else lambda2
    if quad:
        d = quad[0].d
        if any(q.d != d for q in quad):
            raise UnsupportedScalarPair("ratio of elements of different quadratic fields")
        r = QuadExt(lambda1, 0, d) if not isinstance(lambda1, QuadExt) else lambda1
        r = r / lambda2
        if r.b == 0:
            return r.a in (1, -1)
        # minimal polynomial x^2 - tr x + N
        return (-r.trace(), r.norm()) in _CYCLOTOMIC_DEG2
    r = normalize(GaussRat.coerce(lambda1) / GaussRat.coerce(lambda2)) if gauss else \
        Fraction(lambda1) / Fraction(lambda2)
    if isinstance(r, GaussRat):
        # non-real Gaussian rational: min poly x^2 - 2re x + |r|^2
        return (-2 * r.re, r.norm()) in _CYCLOTOMIC_DEG2
    return r in (1, -1)
