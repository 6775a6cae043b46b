"""Signatures over the Boolean (or size-4) domain and their algebra.

A signature of arity r over domain d is stored as its full value table of
length d**r, indexed with the first variable most significant.
"""
from __future__ import annotations

import itertools
from math import gcd
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .errors import ArityUnderflow, DomainMismatch, MalformedGate
from .exactnum import ExactMatrix, GaussRat, is_rational, normalize, parse_scalar, format_scalar, scalar_key
from .exactnum.poly import IntPoly, rational_roots


@dataclass(frozen=True)
class Signature:
    domain_size: int
    arity: int
    table: tuple

    def __post_init__(self):
        if self.domain_size not in (2, 4):
            raise ValueError(f"domain size must be 2 or 4, got {self.domain_size}")
        if self.arity < 0:
            raise ValueError("negative arity")
        table = tuple(normalize(v) for v in self.table)
        if len(table) != self.domain_size ** self.arity:
            raise ValueError(f"table length {len(table)} != {self.domain_size}^{self.arity}")
        object.__setattr__(self, "table", table)

    def index(self, xs: Sequence[int]) -> int:
        idx = 0
        for x in xs:
            idx = idx * self.domain_size + x
        return idx

    def __call__(self, *xs):
        if len(xs) == 1 and isinstance(xs[0], (tuple, list)):
            xs = xs[0]
        if len(xs) != self.arity:
            raise ValueError(f"expected {self.arity} inputs, got {len(xs)}")
        return self.table[self.index(xs)]

    def inputs(self):
        return itertools.product(range(self.domain_size), repeat=self.arity)

    def matrix(self, l: Optional[int] = None) -> ExactMatrix:
        """Signature matrix with the first ``l`` variables as rows."""
        if l is None:
            l = self.arity // 2
        d = self.domain_size
        return ExactMatrix(d ** l, d ** (self.arity - l), self.table)

    @classmethod
    def from_matrix(cls, m: ExactMatrix, domain_size: int = 2) -> "Signature":
        arity = 0
        n = m.rows * m.cols
        while domain_size ** arity < n:
            arity += 1
        return cls(domain_size, arity, m.entries)

    def is_symmetric(self) -> bool:
        if self.domain_size != 2:
            return all(self(xs) == self(tuple(sorted(xs))) for xs in self.inputs())
        by_weight = {}
        for xs in self.inputs():
            w = sum(xs)
            v = self(xs)
            if by_weight.setdefault(w, v) != v:
                return False
        return True

    def symmetric_values(self) -> list:
        """[f_0, ..., f_r] for a symmetric Boolean signature."""
        if self.domain_size != 2 or not self.is_symmetric():
            raise ValueError("not a symmetric Boolean signature")
        return [self.table[(1 << w) - 1] for w in range(self.arity + 1)]

    def scale(self, c) -> "Signature":
        return Signature(self.domain_size, self.arity, [c * v for v in self.table])

    def to_json(self) -> dict:
        if self.domain_size == 2 and self.arity >= 1 and self.is_symmetric():
            return {"arity": self.arity, "domain": 2,
                    "symmetric": [format_scalar(v) for v in self.symmetric_values()]}
        return {"arity": self.arity, "domain": self.domain_size,
                "table": [format_scalar(v) for v in self.table]}

    @classmethod
    def from_json(cls, obj: dict) -> "Signature":
        domain = obj.get("domain", 2)
        arity = obj["arity"]
        if "symmetric" in obj:
            if domain != 2:
                raise ValueError("symmetric notation is Boolean-only")
            vals = [parse_scalar(v) for v in obj["symmetric"]]
            if len(vals) != arity + 1:
                raise ValueError(f"symmetric list of length {len(vals)} for arity {arity}")
            return symmetric(vals)
        if "table" in obj:
            return cls(domain, arity, [parse_scalar(v) for v in obj["table"]])
        raise ValueError("signature needs 'symmetric' or 'table'")

    def __repr__(self):
        if self.domain_size == 2 and self.arity >= 1 and self.is_symmetric():
            return f"Signature.sym({self.symmetric_values()})"
        return f"Signature(d={self.domain_size}, r={self.arity}, {list(self.table)})"


def symmetric(values: Sequence) -> Signature:
    """Expand [f_0, ..., f_r] to a full Boolean table."""
    values = [normalize(v) for v in values]
    if not values:
        raise ValueError("symmetric signature needs at least one value")
    r = len(values) - 1
    table = [values[bin(i).count("1")] for i in range(1 << r)]
    return Signature(2, r, table)


def equality(r: int, domain_size: int = 2) -> Signature:
    if r < 1:
        raise ValueError("equality needs arity >= 1")
    d = domain_size
    table = [1 if len(set(xs)) == 1 else 0
             for xs in itertools.product(range(d), repeat=r)]
    return Signature(d, r, table)


def unary(values: Sequence) -> Signature:
    return Signature(len(values), 1, values)


def tensor(f: Signature, g: Signature) -> Signature:
    """Disjoint union: f's variables followed by g's."""
    if f.domain_size != g.domain_size:
        raise DomainMismatch("tensor of signatures over different domains")
    return Signature(f.domain_size, f.arity + g.arity,
                     [a * b for a in f.table for b in g.table])


def permute(f: Signature, order: Sequence[int]) -> Signature:
    """New signature h with h(y) = f(x) where y[i] = x[order[i]]."""
    if sorted(order) != list(range(f.arity)):
        raise ValueError("order must be a permutation of the variables")
    table = [0] * len(f.table)
    for xs in f.inputs():
        ys = [xs[o] for o in order]
        table[f.index(ys)] = f.table[f.index(xs)]
    return Signature(f.domain_size, f.arity, table)


def compose(f: Signature, g: Signature, l: int) -> Signature:
    """Join the last ``l`` variables of f to the first ``l`` of g (M_f . M_g)."""
    if f.domain_size != g.domain_size:
        raise DomainMismatch("compose over different domains")
    if l < 0 or l > f.arity or l > g.arity:
        raise ArityUnderflow(f"cannot join {l} variables of arities {f.arity}, {g.arity}")
    if f.arity + g.arity - 2 * l < 1:
        raise ArityUnderflow("composition would leave no free variables")
    prod = f.matrix(f.arity - l) @ g.matrix(l)
    return Signature(f.domain_size, f.arity + g.arity - 2 * l, prod.entries)


@dataclass(frozen=True)
class SplitSignature:
    f0: Signature
    f1: Signature

    def __post_init__(self):
        if self.f0.arity != self.f1.arity or self.f0.domain_size != self.f1.domain_size:
            raise ValueError("sub-signatures must share arity and domain")

    @property
    def uniform(self) -> bool:
        return self.f0 == self.f1


def split(f: Signature) -> SplitSignature:
    """Sub-signatures by the value of the first variable (Boolean)."""
    if f.arity < 2:
        raise ArityUnderflow("split needs arity >= 2")
    if f.domain_size != 2:
        raise DomainMismatch("split is defined for Boolean signatures")
    half = len(f.table) // 2
    return SplitSignature(Signature(2, f.arity - 1, f.table[:half]),
                          Signature(2, f.arity - 1, f.table[half:]))


def join(s: SplitSignature) -> Signature:
    return Signature(2, s.f0.arity + 1, s.f0.table + s.f1.table)


def uniform(f0: Signature) -> Signature:
    return join(SplitSignature(f0, f0))


def is_uniform(f: Signature) -> bool:
    return f.arity >= 2 and split(f).uniform


# -- gates ---------------------------------------------------------------------

@dataclass(frozen=True)
class GateVertex:
    signature: Signature
    edges: tuple  # edge labels, one per signature variable


@dataclass(frozen=True)
class HolantGate:
    """Vertices with signatures and per-vertex edge labels.

    Labels appearing in ``dangling`` must occur exactly once among the vertex
    slots; every other label is internal and must occur exactly twice.
    """
    vertices: tuple
    dangling: tuple

    @classmethod
    def build(cls, vertices, dangling) -> "HolantGate":
        return cls(tuple(GateVertex(sig, tuple(edges)) for sig, edges in vertices), tuple(dangling))

    def internal_edges(self) -> list:
        counts = {}
        for v in self.vertices:
            for e in v.edges:
                counts[e] = counts.get(e, 0) + 1
        return sorted((e for e in counts if e not in self.dangling), key=str)

    def validate(self) -> None:
        counts = {}
        domains = set()
        for v in self.vertices:
            if len(v.edges) != v.signature.arity:
                raise MalformedGate(f"vertex with arity {v.signature.arity} lists {len(v.edges)} edges")
            domains.add(v.signature.domain_size)
            for e in v.edges:
                counts[e] = counts.get(e, 0) + 1
        if len(domains) > 1:
            raise MalformedGate("mixed domains in one gate")
        if len(set(self.dangling)) != len(self.dangling):
            raise MalformedGate("duplicate dangling edge")
        for e in self.dangling:
            if counts.get(e) != 1:
                raise MalformedGate(f"dangling edge {e!r} must attach to exactly one vertex")
        for e, c in counts.items():
            if e not in self.dangling and c != 2:
                raise MalformedGate(f"internal edge {e!r} appears {c} times")
        if not self.dangling:
            raise MalformedGate("gate has no dangling edges")


def gate_signature(g: HolantGate) -> Signature:
    """Induced signature: sum over internal edges of the vertex product."""
    g.validate()
    d = g.vertices[0].signature.domain_size
    internal = g.internal_edges()
    table = []
    for dang in itertools.product(range(d), repeat=len(g.dangling)):
        fixed = dict(zip(g.dangling, dang))
        total = 0
        for inner in itertools.product(range(d), repeat=len(internal)):
            val = dict(fixed)
            val.update(zip(internal, inner))
            prod = 1
            for v in g.vertices:
                prod = prod * v.signature.table[v.signature.index([val[e] for e in v.edges])]
                if not prod:
                    break
            total = total + prod
        table.append(total)
    return Signature(d, len(g.dangling), table)


def recursive_a1a_gate(a) -> HolantGate:
    """Binary gadget for Holant([a,1,a] | =3) iterating [x_i, y_i, x_i].

    Wiring (stored as reconstructed data, checked against the printed
    matrix formula): dangling ``x`` on a binary vertex P, P joined to an
    =3 vertex D whose two other edges run through binary vertices Q1, Q2 to
    an =3 vertex C carrying the dangling edge ``y``.
    """
    b = symmetric([a, 1, a])
    eq3 = equality(3)
    return HolantGate.build(
        [(b, ("x", "pd")), (eq3, ("pd", "d1", "d2")), (b, ("d1", "c1")),
         (b, ("d2", "c2")), (eq3, ("c1", "c2", "y"))],
        ("x", "y"),
    )


# -- (=3) M^{(x)3} ---------------------------------------------------------------

def apply_eq3_tensor(m: ExactMatrix) -> Signature:
    """Symmetric ternary [w_0..w_3] with w_k = sum_b m(b,0)^(3-k) m(b,1)^k."""
    if (m.rows, m.cols) != (2, 2):
        raise ValueError("apply_eq3_tensor needs a 2x2 matrix")
    w = [sum(m[b, 0] ** (3 - k) * m[b, 1] ** k for b in (0, 1)) for k in range(4)]
    return symmetric(w)


def _rational_cube_root(x) -> Optional[Fraction]:
    x = Fraction(x)
    a, b = _int_cube_root(abs(x.numerator)), _int_cube_root(x.denominator)
    if a is None or b is None:
        return None
    return Fraction(a if x >= 0 else -a, b)


def _int_cube_root(n: int) -> Optional[int]:
    r = round(n ** (1 / 3)) if n < 1 << 60 else _icbrt(n)
    for c in (r - 1, r, r + 1):
        if c >= 0 and c ** 3 == n:
            return c
    return None


def _icbrt(n: int) -> int:
    lo, hi = 0, 1 << (n.bit_length() // 3 + 1)
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if mid ** 3 <= n:
            lo = mid
        else:
            hi = mid - 1
    return lo


def _gauss_cube_root(x):
    """A cube root of x inside Q(i), or None."""
    x = normalize(x)
    if not isinstance(x, GaussRat):
        return _rational_cube_root(x)
    # a = p + qi with p^2 + q^2 = n, n^3 = |x|^2 and 4p^3 - 3np = re(x)
    n = _rational_cube_root(x.norm())
    if n is None:
        return None
    c = Fraction(x.re)
    poly = [-c, -3 * n, 0, 4]
    den = 1
    for t in poly:
        den = den * Fraction(t).denominator
    for p in rational_roots(IntPoly([int(Fraction(t) * den) for t in poly])):
        q2 = n - p * p
        if q2 < 0:
            continue
        for q in {_rational_sqrt(q2), -_rational_sqrt(q2) if _rational_sqrt(q2) is not None else None}:
            if q is None:
                continue
            cand = GaussRat(p, q)
            if cand ** 3 == x:
                return normalize(cand)
    return None


CUBE_SEARCH_HEIGHT = 40


def _split_into_cubes(c):
    """Write c = x^3 + y^3, preferring y = 0.

    Beyond an exact cube root this is a bounded search over rationals x of
    small height (sums of two rational cubes have no closed form).
    """
    x = _gauss_cube_root(c)
    if x is not None:
        return (x, 0)
    if not is_rational(c):
        return None
    c = Fraction(c)
    reach = 2 * int(abs(float(c)) ** (1 / 3)) + 2
    for den in range(1, CUBE_SEARCH_HEIGHT + 1):
        for num in range(-reach * den, reach * den + 1):
            if gcd(num, den) != 1:
                continue
            x = Fraction(num, den)
            y = _rational_cube_root(c - x ** 3)
            if y is not None and (x, y) >= (y, x):
                return (normalize(x), normalize(y))
    return None


def _rational_sqrt(x: Fraction) -> Optional[Fraction]:
    x = Fraction(x)
    if x < 0:
        return None
    from math import isqrt
    a, b = isqrt(x.numerator), isqrt(x.denominator)
    if a * a == x.numerator and b * b == x.denominator:
        return Fraction(a, b)
    return None


def _gauss_sqrt(x):
    """A square root of x inside Q(i), or None."""
    x = normalize(x)
    if not isinstance(x, GaussRat):
        r = _rational_sqrt(Fraction(x))
        if r is not None:
            return r
        r = _rational_sqrt(-Fraction(x))
        return GaussRat(0, r) if r is not None else None
    # (p + qi)^2 = x:  p^2 - q^2 = re, 2pq = im, p^2 + q^2 = |x|
    mod = _rational_sqrt(x.norm())
    if mod is None:
        return None
    p = _rational_sqrt((mod + x.re) / 2)
    if p is None or p == 0:
        return None
    return GaussRat(p, x.im / (2 * p))


def _kernel_2x3(rows) -> Optional[list]:
    """A nonzero kernel vector of a rank-2 2x3 matrix (cross product)."""
    (a0, a1, a2), (b0, b1, b2) = rows
    v = [a1 * b2 - a2 * b1, a2 * b0 - a0 * b2, a0 * b1 - a1 * b0]
    return v if any(x != 0 for x in v) else None


def _normalize_rows(r1, r2) -> ExactMatrix:
    rows = sorted([list(r1), list(r2)], key=lambda r: [scalar_key(x) for x in r])
    return ExactMatrix.from_rows(rows)


def decompose_eq3_tensor(f: Signature) -> Optional[ExactMatrix]:
    """Find a 2x2 Gaussian-rational M with apply_eq3_tensor(M) = f.

    Two-term decomposition of the binary cubic via the Hankel kernel: the
    weights follow w_k = alpha r^k + beta s^k, where r, s are roots of the
    kernel quadratic (a root at infinity means a row of the form (0, b)).
    Returns None when no decomposition with Gaussian-rational entries exists.
    The result is normalized with the lexicographically smaller row first.
    """
    if f.domain_size != 2 or f.arity != 3 or not f.is_symmetric():
        raise ValueError("decompose_eq3_tensor needs a symmetric Boolean ternary signature")
    w = f.symmetric_values()
    rows = [[w[0], w[1], w[2]], [w[1], w[2], w[3]]]
    minors = [w[0] * w[2] - w[1] * w[1], w[0] * w[3] - w[1] * w[2], w[1] * w[3] - w[2] * w[2]]
    result = None
    if all(x == 0 for x in w):
        result = _normalize_rows([0, 0], [0, 0])
    elif all(m == 0 for m in minors):
        # rank 1: a single cube (a, b) with a^3 = w0, b/a = w1/w0
        if w[0] != 0:
            c, ratio = w[0], normalize(GaussRat.coerce(w[1]) / w[0])
        else:
            c, ratio = w[3], None
        pair = _split_into_cubes(c)
        if pair is not None:
            rows = [[0, x] if ratio is None else [x, normalize(x * ratio)] for x in pair]
            result = _normalize_rows(*rows)
    else:
        ker = _kernel_2x3(rows)
        q0, q1, q2 = ker
        terms = []  # (alpha, ratio) or (beta, None) for the infinite root
        if q2 != 0:
            disc = q1 * q1 - 4 * q0 * q2
            sq = _gauss_sqrt(disc)
            if sq is not None and disc != 0:
                r = normalize((-q1 + sq) / (2 * GaussRat.coerce(q2)))
                s = normalize((-q1 - sq) / (2 * GaussRat.coerce(q2)))
                # w0 = alpha + beta, w1 = alpha r + beta s
                alpha = normalize((w[1] - s * w[0]) / GaussRat.coerce(r - s))
                beta = normalize(w[0] - alpha)
                terms = [(alpha, r), (beta, s)]
        elif q1 != 0:
            r = normalize(-GaussRat.coerce(q0) / q1)
            alpha = w[0]
            beta = normalize(w[3] - alpha * r ** 3)
            terms = [(alpha, r), (beta, None)]
        found = []
        for coef, ratio in terms:
            c = _gauss_cube_root(coef)
            if c is None:
                found = None
                break
            found.append([0, c] if ratio is None else [c, normalize(c * ratio)])
        if found:
            result = _normalize_rows(*found)
    if result is not None and apply_eq3_tensor(result) != f:
        return None
    return result
