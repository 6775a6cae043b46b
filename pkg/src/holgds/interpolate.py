"""Coefficient recovery for homogeneous polynomials at recurrence points."""
from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from typing import Optional, Sequence

import numpy as np

from .errors import SingularMatrix, SingularSystem
from .exactnum import (
    ExactMatrix,
    char_poly,
    format_scalar,
    irreducible_mod_p_witness,
    mat_det,
    mat_rank,
    mat_solve_many,
    normalize,
    parse_scalar,
    sturm_real_root_count,
)
from .gadgets import RecurrenceSystem, iterate

WITNESS_PRIME_BOUND = 1000


class MonomialBasis:
    """Exponent tuples of k variables summing to n, in descending lex order."""

    def __init__(self, k: int, n: int):
        if k < 1 or n < 0:
            raise ValueError("need k >= 1 and n >= 0")
        self.k, self.n = k, n
        self.exponents = tuple(self._gen(k, n))
        self.index = {e: i for i, e in enumerate(self.exponents)}

    @staticmethod
    def _gen(k, n):
        if k == 1:
            yield (n,)
            return
        for first in range(n, -1, -1):
            for rest in MonomialBasis._gen(k - 1, n - first):
                yield (first,) + rest

    def __len__(self):
        return len(self.exponents)

    def __iter__(self):
        return iter(self.exponents)

    def __eq__(self, other):
        return isinstance(other, MonomialBasis) and (self.k, self.n) == (other.k, other.n)

    def __repr__(self):
        return f"MonomialBasis(k={self.k}, n={self.n})"

    @staticmethod
    def expected_size(k, n):
        return comb(n + k - 1, k - 1)

    def evaluate_row(self, point: Sequence) -> list:
        powers = [[1] for _ in range(self.k)]
        for i, x in enumerate(point):
            for _ in range(self.n):
                powers[i].append(powers[i][-1] * x)
        row = []
        for e in self.exponents:
            val = 1
            for i, d in enumerate(e):
                val = val * powers[i][d]
            row.append(val)
        return row


@dataclass
class CoefficientTable:
    bases: tuple  # one basis, or (x-basis, y-basis) for products
    values: dict = field(default_factory=dict)

    def __getitem__(self, exp):
        return self.values[tuple(exp)]

    def items(self):
        return self.values.items()

    def to_json(self) -> dict:
        return {
            "degrees": [b.n for b in self.bases],
            "entries": [{"exp": list(e), "value": format_scalar(v)} for e, v in self.values.items()],
        }

    @classmethod
    def from_json(cls, obj: dict, ks: Sequence[int]) -> "CoefficientTable":
        bases = tuple(MonomialBasis(k, n) for k, n in zip(ks, obj["degrees"]))
        vals = {tuple(e["exp"]): parse_scalar(e["value"]) for e in obj["entries"]}
        return cls(bases, vals)

    def evaluate(self, *points) -> object:
        """Sum of c * monomial at one point per basis."""
        total = 0
        split = [b.k for b in self.bases]
        for exp, c in self.values.items():
            term = c
            pos = 0
            for pt, k in zip(points, split):
                for x, d in zip(pt, exp[pos:pos + k]):
                    term = term * x ** d
                pos += k
            total = total + term
        return normalize(total)

    def is_nonnegative_integral(self) -> bool:
        return all(isinstance(v, int) and v >= 0 for v in self.values.values())


def points(sys: RecurrenceSystem, count: int, start: int = 1) -> list:
    """x_s = A^s v for s = start .. start + count - 1."""
    out = []
    v = iterate(sys, start)
    for _ in range(count):
        out.append(list(v))
        v = sys.matrix @ v
    return out


def evaluation_matrix(basis: MonomialBasis, pts) -> ExactMatrix:
    return ExactMatrix.from_rows([basis.evaluate_row(p) for p in pts])


def _solve(matrix: ExactMatrix, columns):
    try:
        return mat_solve_many(matrix, columns)
    except SingularMatrix as exc:
        raise SingularSystem(f"interpolation system is singular: {exc}") from None


def recover(values: Sequence, sys: RecurrenceSystem, n: int) -> CoefficientTable:
    """Coefficients c with sum_I c_I x_s^I = values[s-1] for s = 1..N."""
    basis = MonomialBasis(sys.k, n)
    if len(values) != len(basis):
        raise ValueError(f"need {len(basis)} values, got {len(values)}")
    mat = evaluation_matrix(basis, points(sys, len(basis)))
    sol = _solve(mat, [list(values)])[0]
    return CoefficientTable((basis,), {e: normalize(c) for e, c in zip(basis, sol)})


def recover_product(values, sys_x: RecurrenceSystem, sys_y: RecurrenceSystem,
                    degrees) -> CoefficientTable:
    """Nested recovery on a grid: values[s-1][t-1] = h(x_s, y_t)."""
    p, q = degrees
    bx, by = MonomialBasis(sys_x.k, p), MonomialBasis(sys_y.k, q)
    if len(values) != len(bx) or any(len(r) != len(by) for r in values):
        raise ValueError(f"need a {len(bx)} x {len(by)} grid of values")
    my = evaluation_matrix(by, points(sys_y, len(by)))
    mx = evaluation_matrix(bx, points(sys_x, len(bx)))
    # d[s][J]: coefficient of y^J at x_s
    d = _solve(my, [list(r) for r in values])
    # c[J][I]: expand each d_J over the x-basis
    cols = [[d[s][j] for s in range(len(bx))] for j in range(len(by))]
    c = _solve(mx, cols)
    vals = {}
    for i, ei in enumerate(bx):
        for j, ej in enumerate(by):
            vals[ei + ej] = normalize(c[j][i])
    return CoefficientTable((bx, by), vals)


def flat_matrix(sys_x, sys_y, degrees) -> tuple:
    """The UV x UV evaluation matrix (rows (s, t) row-major) and column keys."""
    p, q = degrees
    bx, by = MonomialBasis(sys_x.k, p), MonomialBasis(sys_y.k, q)
    rx = [bx.evaluate_row(pt) for pt in points(sys_x, len(bx))]
    ry = [by.evaluate_row(pt) for pt in points(sys_y, len(by))]
    rows = [[a * b for a in row_x for b in row_y] for row_x in rx for row_y in ry]
    keys = [ei + ej for ei in bx for ej in by]
    return rows, keys


def recover_product_flat(values, sys_x, sys_y, degrees) -> CoefficientTable:
    """Single exact solve of the full Kronecker system (small instances)."""
    p, q = degrees
    bx, by = MonomialBasis(sys_x.k, p), MonomialBasis(sys_y.k, q)
    rows, keys = flat_matrix(sys_x, sys_y, degrees)
    rhs = [v for r in values for v in r]
    sol = _solve(ExactMatrix.from_rows(rows), [rhs])[0]
    return CoefficientTable((bx, by), {k: normalize(c) for k, c in zip(keys, sol)})


def solve_mod_p(rows, rhs, prime: int) -> Optional[list]:
    """Gauss-Jordan over GF(prime) with numpy; None if singular mod prime."""
    if prime >= 1 << 31:
        raise ValueError("prime must stay below 2^31 so products fit in int64")
    n = len(rows)
    a = np.array([[x % prime for x in r] + [b % prime] for r, b in zip(rows, rhs)], dtype=np.int64)
    for col in range(n):
        nz = np.nonzero(a[col:, col])[0]
        if len(nz) == 0:
            return None
        piv = col + nz[0]
        if piv != col:
            a[[col, piv]] = a[[piv, col]]
        inv = pow(int(a[col, col]), -1, prime)
        a[col] = (a[col] * inv) % prime
        factors = a[:, col].copy()
        factors[col] = 0
        a = (a - np.outer(factors, a[col]) % prime) % prime
    return [int(x) for x in a[:, n]]


def flat_check_mod_p(table: CoefficientTable, values, sys_x, sys_y, degrees,
                     prime: int = 2147483629) -> bool:
    """Solve the flat system modulo a prime and compare with the table."""
    rows, keys = flat_matrix(sys_x, sys_y, degrees)
    rhs = [v for r in values for v in r]
    sol = solve_mod_p(rows, rhs, prime)
    if sol is None:
        raise SingularSystem(f"flat system is singular modulo {prime}")
    for k, c in zip(keys, sol):
        v = table[k]  # int or Fraction
        if v.numerator * pow(v.denominator, -1, prime) % prime != c:
            return False
    return True


# -- conditions and certificates --------------------------------------------------------

@dataclass(frozen=True)
class GaloisCertificate:
    ok: bool
    witness_prime: Optional[int]
    real_roots: Optional[int]
    degree: int
    reason: str = ""

    def to_json(self) -> dict:
        return {"ok": self.ok, "witness_prime": self.witness_prime,
                "real_roots": self.real_roots, "degree": self.degree, "reason": self.reason}


def galois_certificate_s5(a: ExactMatrix, prime_bound: int = WITNESS_PRIME_BOUND) -> GaloisCertificate:
    """Irreducible prime-degree char poly with exactly two non-real roots.

    Such a polynomial has Galois group S_p, which rules out nontrivial
    zero-sum exponent tuples with eigenvalue product 1. A refusal only means
    this certificate does not apply.
    """
    if (a.rows, a.cols) != (5, 5):
        return GaloisCertificate(False, None, None, a.rows, "matrix is not 5x5")
    f = char_poly(a)
    witness = irreducible_mod_p_witness(f, prime_bound)
    if witness is None:
        return GaloisCertificate(False, None, None, 5,
                                 f"no irreducibility witness prime up to {prime_bound}")
    real = sturm_real_root_count(f)
    if real != 3:
        return GaloisCertificate(False, witness, real, 5,
                                 f"{5 - real} non-real roots; need exactly two")
    return GaloisCertificate(True, witness, real, 5, "")


def check_conditions(sys: RecurrenceSystem, n: int) -> dict:
    det = mat_det(sys.matrix)
    basis = MonomialBasis(sys.k, n)
    mat = evaluation_matrix(basis, points(sys, len(basis)))
    report = {
        "det": det,
        "det_nonzero": det != 0,
        "basis_size": len(basis),
        "full_rank": mat_rank(mat) == len(basis),
    }
    if sys.k == 5 and sys.matrix.is_integer():
        report["galois"] = galois_certificate_s5(sys.matrix)
    return report
