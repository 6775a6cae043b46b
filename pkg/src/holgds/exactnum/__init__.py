"""Exact scalar and linear-algebra substrate."""
from fractions import Fraction

from .matrix import (
    ExactMatrix,
    char_poly,
    mat_det,
    mat_inverse,
    mat_mul,
    mat_rank,
    mat_solve,
    mat_solve_many,
    mat_vec,
)
from .poly import (
    IntPoly,
    irreducible_mod_p_witness,
    is_irreducible_mod,
    rational_roots,
    sturm_real_root_count,
)
from .scalars import (
    GaussRat,
    QuadExt,
    Rat,
    format_scalar,
    is_rational,
    normalize,
    parse_scalar,
    ratio_root_of_unity,
    scalar_key,
    scalar_text,
    squarefree_part,
)


def eigenvalues_2x2(m: ExactMatrix):
    """Eigenvalues of a 2x2 rational matrix as a pair (smaller root first).

    Rational eigenvalues come back as Fractions; otherwise both values live
    in Q(sqrt d) for the square-free part d of the discriminant.
    """
    if (m.rows, m.cols) != (2, 2):
        raise ValueError("eigenvalues_2x2 needs a 2x2 matrix")
    tr = Fraction(m[0, 0] + m[1, 1])
    det = Fraction(m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0])
    disc = tr * tr - 4 * det  # eigenvalues (tr +- sqrt(disc)) / 2
    num, den = disc.numerator, disc.denominator
    # sqrt(num/den) = sqrt(num*den)/den
    s, r = squarefree_part(num * den)
    if s == 0:
        return normalize(tr / 2), normalize(tr / 2)
    if s == 1:
        root = Fraction(r, den)
        return normalize((tr - root) / 2), normalize((tr + root) / 2)
    half = Fraction(r, 2 * den)
    return QuadExt(tr / 2, -half, s), QuadExt(tr / 2, half, s)


__all__ = [
    "ExactMatrix", "GaussRat", "IntPoly", "QuadExt", "Rat",
    "char_poly", "eigenvalues_2x2", "format_scalar", "irreducible_mod_p_witness",
    "is_irreducible_mod", "is_rational", "mat_det", "mat_inverse", "mat_mul",
    "mat_rank", "mat_solve", "mat_solve_many", "mat_vec", "normalize",
    "parse_scalar", "ratio_root_of_unity", "rational_roots", "scalar_key",
    "scalar_text", "squarefree_part", "sturm_real_root_count",
]
