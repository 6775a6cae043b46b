"""Dense exact matrices and fraction-free elimination."""
from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

from ..errors import DimensionMismatch, NonIntegerEntries, NotSquare, SingularMatrix
from .scalars import GaussRat, QuadExt, normalize


class ExactMatrix:
    """Immutable row-major matrix over one exact scalar kind."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Iterable):
        entries = tuple(normalize(e) for e in entries)
        if len(entries) != rows * cols:
            raise DimensionMismatch(f"{rows}x{cols} matrix needs {rows * cols} entries, got {len(entries)}")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", entries)

    def __setattr__(self, name, value):
        raise AttributeError("ExactMatrix is immutable")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "ExactMatrix":
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise DimensionMismatch("ragged rows")
        return cls(len(rows), ncols, [x for r in rows for x in r])

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls(n, n, [1 if i == j else 0 for i in range(n) for j in range(n)])

    @classmethod
    def diag(cls, values: Sequence) -> "ExactMatrix":
        n = len(values)
        return cls(n, n, [values[i] if i == j else 0 for i in range(n) for j in range(n)])

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def to_rows(self) -> list[list]:
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(self.cols, self.rows,
                           [self[i, j] for j in range(self.cols) for i in range(self.rows)])

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_integer(self) -> bool:
        return all(isinstance(e, int) for e in self.entries)

    def __matmul__(self, other):
        if isinstance(other, ExactMatrix):
            return mat_mul(self, other)
        return mat_vec(self, other)

    def __mul__(self, scalar):
        return ExactMatrix(self.rows, self.cols, [e * scalar for e in self.entries])

    __rmul__ = __mul__

    def __add__(self, other: "ExactMatrix"):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatch("shape mismatch in addition")
        return ExactMatrix(self.rows, self.cols, [a + b for a, b in zip(self.entries, other.entries)])

    def __sub__(self, other: "ExactMatrix"):
        return self + (-1) * other

    def __pow__(self, k: int):
        if not self.is_square:
            raise NotSquare("power of a non-square matrix")
        result = ExactMatrix.identity(self.rows)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return (self.rows, self.cols, self.entries) == (other.rows, other.cols, other.entries)

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self):
        return f"ExactMatrix({self.to_rows()!r})"


def mat_mul(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
    if a.cols != b.rows:
        raise DimensionMismatch(f"cannot multiply {a.rows}x{a.cols} by {b.rows}x{b.cols}")
    out = []
    bcols = [b.entries[j::b.cols] for j in range(b.cols)]
    for i in range(a.rows):
        r = a.row(i)
        for col in bcols:
            acc = 0
            for x, y in zip(r, col):
                if x and y:
                    acc = acc + x * y
            out.append(acc)
    return ExactMatrix(a.rows, b.cols, out)


def mat_vec(a: ExactMatrix, v: Sequence) -> list:
    if len(v) != a.cols:
        raise DimensionMismatch(f"vector of length {len(v)} for {a.cols} columns")
    out = []
    for i in range(a.rows):
        acc = 0
        for x, y in zip(a.row(i), v):
            if x and y:
                acc = acc + x * y
        out.append(normalize(acc))
    return out


# -- elimination ----------------------------------------------------------------

def _all_int(rows) -> bool:
    return all(isinstance(x, int) for r in rows for x in r)


def _is_field_kind(rows) -> bool:
    return any(isinstance(x, (GaussRat, QuadExt)) for r in rows for x in r)


def _integerize_rows(rows, rhs_rows):
    """Scale each rational row (with its rhs) to integers; scaling by a
    positive row factor leaves solutions unchanged."""
    out_a, out_b = [], []
    for r, b in zip(rows, rhs_rows):
        den = 1
        for x in list(r) + list(b):
            if isinstance(x, Fraction):
                den = lcm(den, x.denominator)
        out_a.append([int(x * den) for x in r])
        out_b.append([int(x * den) for x in b])
    return out_a, out_b


def bareiss_det(rows: list[list[int]]) -> int:
    """Fraction-free determinant of an integer matrix (destroys ``rows``)."""
    n = len(rows)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if rows[k][k] == 0:
            for i in range(k + 1, n):
                if rows[i][k] != 0:
                    rows[k], rows[i] = rows[i], rows[k]
                    sign = -sign
                    break
            else:
                return 0
        pk = rows[k][k]
        rk = rows[k]
        for i in range(k + 1, n):
            ri = rows[i]
            a = ri[k]
            for j in range(k + 1, n):
                ri[j] = (pk * ri[j] - a * rk[j]) // prev
            ri[k] = 0
        prev = pk
    return sign * rows[n - 1][n - 1] if n else 1


def _lift_ints(rows) -> list:
    # int / int would produce a float
    return [[Fraction(x) if isinstance(x, int) else x for x in r] for r in rows]


def _field_det(rows) -> object:
    rows = _lift_ints(rows)
    n = len(rows)
    det = 1
    for k in range(n):
        piv = next((i for i in range(k, n) if rows[i][k] != 0), None)
        if piv is None:
            return 0
        if piv != k:
            rows[k], rows[piv] = rows[piv], rows[k]
            det = -det
        pk = rows[k][k]
        det = det * pk
        for i in range(k + 1, n):
            f = rows[i][k] / pk
            if f:
                for j in range(k, n):
                    rows[i][j] = rows[i][j] - f * rows[k][j]
    return det


def mat_det(a: ExactMatrix):
    """Exact determinant (fraction-free elimination for integer/rational input)."""
    if not a.is_square:
        raise NotSquare(f"{a.rows}x{a.cols} matrix has no determinant")
    rows = a.to_rows()
    if _is_field_kind(rows):
        return normalize(_field_det(rows))
    if _all_int(rows):
        return bareiss_det(rows)
    den = 1
    scaled, _ = _integerize_rows(rows, [[] for _ in rows])
    for r in rows:
        d = 1
        for x in r:
            if isinstance(x, Fraction):
                d = lcm(d, x.denominator)
        den *= d
    return normalize(Fraction(bareiss_det(scaled), den))


def _bareiss_solve_int(a_rows: list[list[int]], b_rows: list[list[int]]) -> list[list]:
    """Solve A X = B over the integers; returns X as exact rationals.

    Forward elimination is fraction-free (Bareiss) on the augmented matrix;
    back substitution works on ``det * X`` which is integral by Cramer.
    """
    n = len(a_rows)
    m = len(b_rows[0]) if b_rows else 0
    aug = _lift_ints([list(a_rows[i]) + list(b_rows[i]) for i in range(n)])
    width = n + m
    prev = 1
    sign = 1
    for k in range(n):
        if aug[k][k] == 0:
            for i in range(k + 1, n):
                if aug[i][k] != 0:
                    aug[k], aug[i] = aug[i], aug[k]
                    sign = -sign
                    break
            else:
                raise SingularMatrix("matrix is singular")
        pk = aug[k][k]
        rk = aug[k]
        for i in range(k + 1, n):
            ri = aug[i]
            f = ri[k]
            if f == 0:
                if pk != prev:
                    for j in range(k + 1, width):
                        ri[j] = (pk * ri[j]) // prev
            else:
                for j in range(k + 1, width):
                    ri[j] = (pk * ri[j] - f * rk[j]) // prev
            ri[k] = 0
        prev = pk
    det = aug[n - 1][n - 1]  # up to sign; U[i][i] divides det * rhs consistently
    sol = [[0] * m for _ in range(n)]
    for c in range(m):
        y = [0] * n
        for i in range(n - 1, -1, -1):
            row = aug[i]
            acc = det * row[n + c]
            for j in range(i + 1, n):
                if row[j]:
                    acc -= row[j] * y[j]
            q, r = divmod(acc, row[i])
            if r:
                raise ArithmeticError("inexact fraction-free back substitution")
            y[i] = q
        for i in range(n):
            sol[i][c] = normalize(Fraction(y[i], det))
    return sol


def _field_solve(a_rows, b_rows) -> list[list]:
    n = len(a_rows)
    m = len(b_rows[0]) if b_rows else 0
    aug = _lift_ints([list(a_rows[i]) + list(b_rows[i]) for i in range(n)])
    for k in range(n):
        piv = next((i for i in range(k, n) if aug[i][k] != 0), None)
        if piv is None:
            raise SingularMatrix("matrix is singular")
        aug[k], aug[piv] = aug[piv], aug[k]
        pk = aug[k][k]
        aug[k] = [x / pk for x in aug[k]]
        for i in range(n):
            if i != k and aug[i][k] != 0:
                f = aug[i][k]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[k])]
    return [[normalize(aug[i][n + c]) for c in range(m)] for i in range(n)]


def mat_solve_many(a: ExactMatrix, rhs_columns: Sequence[Sequence]) -> list[list]:
    """Solve ``a @ x = b`` for each column ``b``; returns the solution columns."""
    if not a.is_square:
        raise NotSquare("solve needs a square matrix")
    n = a.rows
    for b in rhs_columns:
        if len(b) != n:
            raise DimensionMismatch(f"rhs length {len(b)} for {n}x{n} system")
    if not rhs_columns:
        return []
    a_rows = a.to_rows()
    b_rows = [[normalize(col[i]) for col in rhs_columns] for i in range(n)]
    if _is_field_kind(a_rows) or _is_field_kind(b_rows):
        sol = _field_solve(a_rows, b_rows)
    else:
        if not (_all_int(a_rows) and _all_int(b_rows)):
            a_rows, b_rows = _integerize_rows(a_rows, b_rows)
        sol = _bareiss_solve_int(a_rows, b_rows)
    return [[sol[i][c] for i in range(n)] for c in range(len(rhs_columns))]


def mat_solve(a: ExactMatrix, rhs: Sequence) -> list:
    """Exact solution of ``a @ x = rhs``; raises SingularMatrix."""
    return mat_solve_many(a, [list(rhs)])[0]


def mat_inverse(a: ExactMatrix) -> ExactMatrix:
    n = a.rows
    if not a.is_square:
        raise NotSquare("inverse of non-square matrix")
    cols = mat_solve_many(a, [[1 if i == j else 0 for i in range(n)] for j in range(n)])
    return ExactMatrix(n, n, [cols[j][i] for i in range(n) for j in range(n)])


def mat_rank(a: ExactMatrix) -> int:
    """Rank by elimination (fraction-free on integer input)."""
    rows = a.to_rows()
    if not _is_field_kind(rows) and not _all_int(rows):
        rows, _ = _integerize_rows(rows, [[] for _ in rows])
    integer = _all_int(rows)
    nrows, ncols = a.rows, a.cols
    rank = 0
    prev = 1
    for c in range(ncols):
        piv = next((i for i in range(rank, nrows) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        pk = rows[rank][c]
        for i in range(rank + 1, nrows):
            f = rows[i][c]
            if integer:
                rows[i] = [(pk * x - f * y) // prev for x, y in zip(rows[i], rows[rank])]
            elif f:
                q = f / pk
                rows[i] = [x - q * y for x, y in zip(rows[i], rows[rank])]
        if integer:
            prev = pk
        rank += 1
    return rank


def char_poly(a: ExactMatrix):
    """det(A - xI) for an integer matrix, leading term (-1)^n x^n.

    Uses the division-free Berkowitz algorithm.
    """
    from .poly import IntPoly

    if not a.is_square:
        raise NotSquare("characteristic polynomial of non-square matrix")
    if not a.is_integer():
        raise NonIntegerEntries("char_poly requires integer entries")
    n = a.rows
    # Berkowitz: coefficient vectors of det(xI - A_k) built incrementally
    vect = [1]
    for k in range(n):
        # A_{k+1} = [[A_k, C], [R, a]] with leading block of size k
        a_kk = a[k, k]
        if k == 0:
            vect = [1, -a_kk]
            continue
        r_row = [a[k, j] for j in range(k)]
        c_col = [a[i, k] for i in range(k)]
        # toeplitz column: 1, -a_kk, -R C, -R A C, -R A^2 C, ...
        col = [1, -a_kk]
        v = c_col
        for _ in range(k):
            col.append(-sum(x * y for x, y in zip(r_row, v)))
            v = [sum(a[i, j] * v[j] for j in range(k)) for i in range(k)]
        # multiply lower-triangular Toeplitz (k+2)x(k+1) by vect
        new = []
        for i in range(k + 2):
            acc = 0
            for j in range(k + 1):
                if 0 <= i - j < len(col):
                    acc += col[i - j] * vect[j]
            new.append(acc)
        vect = new
    # vect holds det(xI - A) coefficients, highest degree first
    sign = -1 if n % 2 else 1
    coeffs = [sign * c for c in reversed(vect)]
    return IntPoly(coeffs)
