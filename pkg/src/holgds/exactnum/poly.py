"""Univariate integer polynomials, Sturm sequences and mod-p irreducibility."""
from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Optional, Sequence

from ..errors import ZeroPolynomial


def _trim(coeffs: list) -> list:
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


class IntPoly:
    """Polynomial with integer coefficients, lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence[int]):
        cs = _trim([int(c) for c in coeffs])
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("IntPoly is immutable")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    @property
    def lead(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "IntPoly":
        return IntPoly([i * c for i, c in enumerate(self.coeffs)][1:])

    def __add__(self, other: "IntPoly") -> "IntPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [0] * (n - len(self.coeffs))
        b = list(other.coeffs) + [0] * (n - len(other.coeffs))
        return IntPoly([x + y for x, y in zip(a, b)])

    def __neg__(self) -> "IntPoly":
        return IntPoly([-c for c in self.coeffs])

    def __sub__(self, other: "IntPoly") -> "IntPoly":
        return self + (-other)

    def __mul__(self, other) -> "IntPoly":
        if isinstance(other, int):
            return IntPoly([c * other for c in self.coeffs])
        if self.is_zero() or other.is_zero():
            return IntPoly([])
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPoly(out)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, IntPoly):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"IntPoly({list(self.coeffs)})"

    def __str__(self):
        if self.is_zero():
            return "0"
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if i == 0:
                body = str(mag)
            else:
                body = ("" if mag == 1 else str(mag)) + ("x" if i == 1 else f"x^{i}")
            terms.append((sign, body))
        first_sign, first_body = terms[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    @classmethod
    def from_roots(cls, roots: Sequence[int]) -> "IntPoly":
        p = cls([1])
        for r in roots:
            p = p * cls([-r, 1])
        return p


# -- rational polynomial helpers (lists of Fraction, low-first) --------------

def _qdivmod(a: list, b: list) -> tuple[list, list]:
    a = [Fraction(x) for x in a]
    b = _trim([Fraction(x) for x in b])
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    r = _trim(a[:])
    while len(r) >= len(b):
        shift = len(r) - len(b)
        f = r[-1] / b[-1]
        q[shift] = f
        for i, c in enumerate(b):
            r[i + shift] -= f * c
        r.pop()
        _trim(r)
    return q, r


def _qgcd(a: list, b: list) -> list:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        _, r = _qdivmod(a, b)
        a, b = b, r
    if not a:
        return a
    lead = a[-1]
    return [Fraction(c) / lead for c in a]


def _primitive(coeffs: list) -> IntPoly:
    """Scale a rational coefficient list to a primitive integer polynomial
    with positive leading coefficient."""
    fr = [Fraction(c) for c in coeffs]
    den = 1
    for c in fr:
        den = den * c.denominator // gcd(den, c.denominator)
    ints = [int(c * den) for c in fr]
    g = 0
    for c in ints:
        g = gcd(g, c)
    if g == 0:
        return IntPoly([])
    ints = [c // g for c in ints]
    if ints and _trim(ints[:]) and _trim(ints[:])[-1] < 0:
        ints = [-c for c in ints]
    return IntPoly(ints)


def squarefree_part(p: IntPoly) -> IntPoly:
    """p / gcd(p, p') made primitive."""
    if p.is_zero():
        raise ZeroPolynomial("square-free part of zero")
    if p.degree <= 0:
        return IntPoly([1])
    g = _qgcd(list(p.coeffs), list(p.derivative().coeffs))
    q, r = _qdivmod(list(p.coeffs), g)
    assert not r
    return _primitive(q)


def sturm_sequence(p: IntPoly) -> list[IntPoly]:
    """Sturm chain p, p', -rem(...), ... with integer (scaled) members.

    Each remainder is rescaled by a positive constant only, which keeps
    sign patterns intact.
    """
    seq = [p, p.derivative()]
    while not seq[-1].is_zero() and seq[-1].degree > 0:
        _, r = _qdivmod(list(seq[-2].coeffs), list(seq[-1].coeffs))
        if not r:
            break
        # positive rescale of -r
        neg = [-c for c in r]
        den = 1
        for c in neg:
            den = den * c.denominator // gcd(den, c.denominator)
        ints = [int(c * den) for c in neg]
        g = 0
        for c in ints:
            g = gcd(g, c)
        seq.append(IntPoly([c // g for c in ints]))
    return [s for s in seq if not s.is_zero()]


def _sign_changes(values) -> int:
    signs = [v > 0 for v in values if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _sign_at_inf(p: IntPoly, negative: bool) -> int:
    lead = p.lead
    if negative and p.degree % 2 == 1:
        lead = -lead
    return lead


def sturm_real_root_count(p: IntPoly, lo=None, hi=None) -> int:
    """Number of distinct real roots of ``p`` in (lo, hi] (default all of R)."""
    if p.is_zero():
        raise ZeroPolynomial("Sturm count of the zero polynomial")
    if p.degree == 0:
        return 0
    seq = sturm_sequence(p)
    if lo is None:
        v_lo = _sign_changes([_sign_at_inf(s, True) for s in seq])
    else:
        v_lo = _sign_changes([s(Fraction(lo)) for s in seq])
    if hi is None:
        v_hi = _sign_changes([_sign_at_inf(s, False) for s in seq])
    else:
        v_hi = _sign_changes([s(Fraction(hi)) for s in seq])
    return v_lo - v_hi


def root_bound(p: IntPoly) -> Fraction:
    """Cauchy bound: every complex root has absolute value below this."""
    lead = abs(p.lead)
    return 1 + Fraction(max(abs(c) for c in p.coeffs[:-1]), lead) if p.degree > 0 else Fraction(1)


def rational_roots(p: IntPoly) -> list[Fraction]:
    """All rational roots of ``p``, found by Sturm isolation and bisection.

    A rational root u/v in lowest terms has v dividing the leading
    coefficient L, so an approximation within 1/(2 L^2) pins it down.
    """
    if p.is_zero():
        raise ZeroPolynomial("roots of the zero polynomial")
    roots = []
    q = p
    if q.degree >= 1 and q.coeffs[0] == 0:
        roots.append(Fraction(0))
        while q.coeffs and q.coeffs[0] == 0:
            q = IntPoly(q.coeffs[1:])
    if q.degree <= 0:
        return roots
    q = squarefree_part(q)
    L = abs(q.lead)
    eps = Fraction(1, 4 * L * L)
    seq = sturm_sequence(q)

    def count(a, b):
        return _sign_changes([s(a) for s in seq]) - _sign_changes([s(b) for s in seq])

    bound = root_bound(q)
    stack = [(-bound, bound)]
    while stack:
        a, b = stack.pop()
        n = count(a, b)
        if n == 0:
            continue
        if n == 1 and b - a < eps:
            cand = ((a + b) / 2).limit_denominator(L)
            for c in {cand, a, b}:
                if c.denominator <= L and q(c) == 0 and c not in roots:
                    roots.append(c)
            continue
        mid = (a + b) / 2
        if q(mid) == 0:
            if mid not in roots:
                roots.append(mid)
        stack.append((a, mid))
        stack.append((mid, b))
    return sorted(set(roots))


# -- arithmetic over GF(q) -----------------------------------------------------

def _mod_trim(a: list) -> list:
    while a and a[-1] == 0:
        a.pop()
    return a


def _mod_divmod(a: list, b: list, q: int) -> tuple[list, list]:
    a = _mod_trim([x % q for x in a])
    b = _mod_trim([x % q for x in b])
    if not b:
        raise ZeroDivisionError("division by zero polynomial mod q")
    inv = pow(b[-1], -1, q)
    quot = [0] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b):
        shift = len(a) - len(b)
        f = a[-1] * inv % q
        quot[shift] = f
        for i, c in enumerate(b):
            a[i + shift] = (a[i + shift] - f * c) % q
        _mod_trim(a)
    return quot, a


def _mod_gcd(a: list, b: list, q: int) -> list:
    a = _mod_trim([x % q for x in a])
    b = _mod_trim([x % q for x in b])
    while b:
        _, r = _mod_divmod(a, b, q)
        a, b = b, r
    if a:
        inv = pow(a[-1], -1, q)
        a = [x * inv % q for x in a]
    return a


def _mod_mulmod(a: list, b: list, f: list, q: int) -> list:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % q
    return _mod_divmod(out, f, q)[1]


def _mod_powmod(base: list, e: int, f: list, q: int) -> list:
    result = [1]
    base = _mod_divmod(base, f, q)[1]
    while e:
        if e & 1:
            result = _mod_mulmod(result, base, f, q)
        base = _mod_mulmod(base, base, f, q)
        e >>= 1
    return result


def is_irreducible_mod(p: IntPoly, q: int) -> bool:
    """Ben-Or test: p mod q is irreducible iff gcd(x^(q^i) - x, p) = 1 for
    every i <= deg/2.  Requires q not dividing the leading coefficient."""
    f = [c % q for c in p.coeffs]
    if p.lead % q == 0:
        raise ValueError(f"{q} divides the leading coefficient")
    n = p.degree
    if n <= 0:
        return False
    if n == 1:
        return True
    xpow = [0, 1]
    for _ in range(n // 2):
        xpow = _mod_powmod(xpow, q, f, q)
        diff = list(xpow) + [0] * max(0, 2 - len(xpow))
        diff[1] = (diff[1] - 1) % q
        g = _mod_gcd(f, diff, q)
        if len(g) > 1:
            return False
    return True


def primes_up_to(n: int) -> list[int]:
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, int(n ** 0.5) + 1):
        if sieve[i]:
            sieve[i * i::i] = bytearray(len(sieve[i * i::i]))
    return [i for i, v in enumerate(sieve) if v]


def irreducible_mod_p_witness(p: IntPoly, prime_bound: int) -> Optional[int]:
    """Smallest prime q <= prime_bound, q not dividing the leading
    coefficient, with p irreducible over GF(q); ``None`` if there is none.

    A witness certifies irreducibility of p over Q (degrees are preserved
    by reduction mod q).
    """
    if p.degree < 1:
        return None
    for q in primes_up_to(prime_bound):
        if p.lead % q == 0:
            continue
        if is_irreducible_mod(p, q):
            return q
    return None
