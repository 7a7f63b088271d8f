"""Stability status of a single plane curve.

Negative answers come from a diagonal subgroup found at some flag built
from the rational singular points and their tangent lines.  Positive answers
come only from sufficient conditions: smooth curves of degree >= 3 are
stable, and lct > 3/d (resp. >= 3/d) gives stable (resp. semistable).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import rational_common_zeros
from .flags import dedupe, flag_matrix, line_through, tangent_lines
from .forms import HomogeneousForm, Matrix3, ProjectivePoint, change_coordinates
from .lct import CurveLct, curve_lct
from .weights import STRICTLY_SEMISTABLE, UNSTABLE, WeightVector, torus_decide_curve


class InternalConsistencyError(RuntimeError):
    """Two sound criteria disagree: a bug, never a property of the input."""


@dataclass
class CurveStatus:
    verdict: str  # unstable | not-stable | strictly-semistable | semistable | stable | inconclusive
    witness: tuple[Matrix3, WeightVector] | None
    positive: str | None  # "smooth" | "lct" | None
    lct: CurveLct
    flags_tried: int
    notes: list[str] = field(default_factory=list)

    @property
    def semistable(self) -> bool:
        return self.verdict in ("semistable", "strictly-semistable", "stable")

    @property
    def stable(self) -> bool:
        return self.verdict == "stable"


def singular_points(f: HomogeneousForm):
    return rational_common_zeros(list(f.gradient()))


def curve_flags(f: HomogeneousForm, points=None, max_pair_points: int = 8) -> list[Matrix3]:
    """Identity, singular points at (0:0:1), tangent lines and joining lines as x = 0."""
    if points is None:
        zs = singular_points(f) if f.degree > 1 else None
        points = zs.points if zs is not None else []
    mats = [Matrix3.identity()]
    for p in points:
        mats.append(flag_matrix(p))
        for ell, _ in tangent_lines(f, p):
            mats.append(flag_matrix(p, ell))
    pts = points[:max_pair_points]
    for a in range(len(pts)):
        for b in range(len(pts)):
            if a != b:
                mats.append(flag_matrix(pts[a], line_through(pts[a], pts[b])))
    return dedupe(mats)


def curve_stability_status(f: HomogeneousForm, extra_points=()) -> CurveStatus:
    if f.is_zero():
        raise ValueError("zero form")
    d = f.degree
    lct = curve_lct(f)
    pts = [p for p, _ in lct.points] + [ProjectivePoint(q) for q in extra_points]
    pts = sorted(set(pts), key=lambda p: p.sort_key())
    if not lct.reduced and d > 1:
        # every point of a multiple component is singular; use the component's rational points
        pts = sorted(set(pts) | set(_multiple_component_points(f)), key=lambda p: p.sort_key())
    flags = curve_flags(f, pts)
    strict = weak = None
    for M in flags:
        tv = torus_decide_curve(change_coordinates(f, M))
        if tv.status == UNSTABLE:
            strict = (M, tv.witness)
            break
        if tv.status == STRICTLY_SEMISTABLE and weak is None:
            weak = (M, tv.witness)
    positive = None
    semi = stab = False
    if lct.smooth and d >= 3:
        positive, semi, stab = "smooth", True, True
    else:
        low = lct.estimate.best_lower
        if low is not None and d >= 1:
            if low > Fraction(3, d):
                positive, semi, stab = "lct", True, True
            elif low >= Fraction(3, d):
                positive, semi = "lct", True
    if strict is not None:
        if semi:
            raise InternalConsistencyError(f"curve {f} is both unstable and semistable")
        return CurveStatus("unstable", strict, None, lct, len(flags))
    if weak is not None:
        if stab:
            raise InternalConsistencyError(f"curve {f} is both non-stable and stable")
        verdict = "strictly-semistable" if semi else "not-stable"
        return CurveStatus(verdict, weak, positive, lct, len(flags))
    if stab:
        return CurveStatus("stable", None, positive, lct, len(flags))
    if semi:
        return CurveStatus("semistable", None, positive, lct, len(flags))
    return CurveStatus("inconclusive", None, None, lct, len(flags))


def _multiple_component_points(f: HomogeneousForm, limit: int = 3) -> list[ProjectivePoint]:
    """A few rational points on the repeated rational lines of f."""
    from .algebra import factor_form

    out = []
    for h, m in factor_form(f):
        if m >= 2 and h.degree == 1:
            a, b, c = h.coefficient(1, 0), h.coefficient(0, 1), h.coefficient(0, 0)
            cands = [(b, -a, 0), (c, 0, -a), (0, c, -b)]
            for q in cands:
                if any(q):
                    out.append(ProjectivePoint(q))
            out = list(dict.fromkeys(out))
    return out[: limit * 3]
