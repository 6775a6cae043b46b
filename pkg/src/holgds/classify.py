"""Tractability verdicts for symmetric ternary signatures against =3.

These evaluate the published dichotomy predicates; they do not prove
hardness. A refusal means the input lies outside the stated hypotheses.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .errors import NonRationalEntry
from .exactnum import format_scalar, is_rational, normalize
from .signatures import decompose_eq3_tensor, symmetric

FP = "FP"
HARD = "SharpPHard"
REFUSED = "Refused"

CASES = ("degenerate", "Gen-Eq", "affine", "planar-case-4", "planar-case-5", "none")


@dataclass(frozen=True)
class Verdict:
    label: str  # FP, SharpPHard or Refused
    case: str
    planar_only: bool = False
    params: dict = field(default_factory=dict)
    reason: str = ""

    @property
    def tractable(self) -> bool:
        return self.label == FP

    def to_json(self) -> dict:
        return {
            "verdict": self.label,
            "case": self.case,
            "planar_only": self.planar_only,
            "params": {k: _fmt(v) for k, v in self.params.items()},
            "reason": self.reason,
        }

    def text(self) -> str:
        parts = [self.label, self.case]
        if self.planar_only:
            parts.append("planar-only")
        parts += [f"{k}={_fmt(v)}" for k, v in self.params.items()]
        if self.reason:
            parts.append(f"({self.reason})")
        return " ".join(str(p) for p in parts)


def _fmt(v):
    if isinstance(v, (list, tuple)):
        return [_fmt(x) for x in v]
    if isinstance(v, (int, Fraction)) or hasattr(v, "re"):
        return format_scalar(v)
    return v


def _rational_entries(f: Sequence) -> list:
    out = []
    for q in f:
        q = normalize(q)
        if not is_rational(q):
            raise NonRationalEntry(f"entry {q} is not rational")
        out.append(Fraction(q))
    if len(out) != 4:
        raise ValueError("a symmetric ternary signature has 4 entries")
    return out


def degenerate_witness(q) -> Optional[dict]:
    """f = c * [x^3, x^2 y, x y^2, y^3] with (x, y) = (1, y) or (0, 1).

    Equivalent to the Hankel matrix [[q0,q1,q2],[q1,q2,q3]] having rank <= 1,
    which also handles zero patterns such as [1,0,0,5] correctly.
    """
    q0, q1, q2, q3 = q
    if not any(q):
        return {"c": 0, "u": (1, 0)}
    if q0 != 0:
        y = q1 / q0
        ok = q2 == q0 * y * y and q3 == q0 * y ** 3
        return {"c": q0, "u": (1, y)} if ok else None
    ok = q1 == 0 and q2 == 0
    return {"c": q3, "u": (0, 1)} if ok else None


def _affine(q) -> Optional[dict]:
    q0, q1, q2, q3 = q
    shapes = [
        ("[a,0,a,0]", q0, (q0, 0, q0, 0)),
        ("[a,0,-a,0]", q0, (q0, 0, -q0, 0)),
        ("[0,a,0,a]", q1, (0, q1, 0, q1)),
        ("[0,a,0,-a]", q1, (0, q1, 0, -q1)),
        ("[a,-a,-a,a]", q0, (q0, -q0, -q0, q0)),
        ("[a,a,-a,-a]", q0, (q0, q0, -q0, -q0)),
    ]
    for name, a, target in shapes:
        if tuple(q) == target:
            return {"shape": name, "a": a}
    return None


def _case4(q) -> Optional[dict]:
    q0, q1, q2, q3 = q
    if (q2, q3) == (q1, q0):
        return {"shape": "[a,b,b,a]", "a": q0, "b": q1}
    if (q2, q3) == (-q1, -q0):
        return {"shape": "[a,b,-b,-a]", "a": q0, "b": q1}
    return None


def _case5(q) -> Optional[dict]:
    """Solve 3a+b = q0, -a-b = q1 and check the remaining two entries."""
    q0, q1, q2, q3 = q
    a = (q0 + q1) / 2
    b = q0 - 3 * a
    if -a + b == q2 and 3 * a - b == q3:
        return {"a": a, "b": b}
    return None


def classify_ternary(f: Sequence, planar: bool = False) -> Verdict:
    q = _rational_entries(f)
    w = degenerate_witness(q)
    if w is not None:
        return Verdict(FP, "degenerate", False, w)
    if q[1] == 0 and q[2] == 0:
        return Verdict(FP, "Gen-Eq", False, {"a": q[0], "b": q[3]})
    w = _affine(q)
    if w is not None:
        return Verdict(FP, "affine", False, w)
    if planar:
        w = _case4(q)
        if w is not None:
            return Verdict(FP, "planar-case-4", True, w)
        w = _case5(q)
        if w is not None:
            return Verdict(FP, "planar-case-5", True, w)
    return Verdict(HARD, "none", False)


def classify_a1b(a, b, planar: bool = False) -> Verdict:
    a, b = normalize(a), normalize(b)
    x = normalize(a * b)
    z = normalize(((a ** 3 + b ** 3) * Fraction(1, 2)) ** 2)
    params = {"X": x, "Z": z}
    if x == 1:
        return Verdict(FP, "X=1", False, params)
    if x == 0 and z == 0:
        return Verdict(FP, "X=Z=0", False, params)
    if x == -1 and z == 0:
        return Verdict(FP, "X=-1,Z=0", False, params)
    if x == -1 and z == -1:
        return Verdict(FP, "X=-1,Z=-1", False, params)
    if planar and normalize(x ** 3) == z:
        return Verdict(FP, "X^3=Z", True, params)
    return Verdict(HARD, "none", False, params)


def _has_supported_shape(m) -> bool:
    """M = [[x,y],[y,z]] or [[x,y],[z,x]], allowing either row order."""
    for r0, r1 in ((0, 1), (1, 0)):
        m00, m01, m10, m11 = m[r0, 0], m[r0, 1], m[r1, 0], m[r1, 1]
        if m01 == m10 or m00 == m11:
            return True
    return False


def classify_uniform_gds(f0: Sequence, planar: bool = False) -> Verdict:
    """Uniform #GDS verdict, available only when f0 = (=3) M^{x3} for a shaped M."""
    q = _rational_entries(f0)
    m = decompose_eq3_tensor(symmetric(q))
    if m is None:
        return Verdict(REFUSED, "none", False, {},
                       "no Gaussian-rational M with (=3) M^{x3} = f0 was found")
    rows = [[m[i, j] for j in range(2)] for i in range(2)]
    if not _has_supported_shape(m):
        return Verdict(REFUSED, "none", False, {"M": rows},
                       "M has neither the [[x,y],[y,z]] nor the [[x,y],[z,x]] shape")
    v = classify_ternary(q, planar)
    return Verdict(v.label, v.case, v.planar_only, dict(v.params, M=rows), v.reason)
