"""Rational base points of a pencil and the base-point multiplicity criterion.

If a base point p has mult_p(f) + mult_p(g) > 4d/3 for the two generators,
then moving p to (0:0:1) and taking lambda = (1, 1, -2) gives
omega(f) = 3 mult_p(f), omega(g) = 3 mult_p(g), hence
omega(P) >= 3(mult_p(f) + mult_p(g)) > 4d, which is the instability
threshold (2d/3)(a_x + a_y - 2a_z) = 4d.  Equality gives non-stability.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .algebra import rational_common_zeros
from .certificate import MULTIPLICITY, StabilityCertificate, multiplicity_entry, pencil_weight_entry
from .forms import HomogeneousForm, ProjectivePoint, change_coordinates, format_form, multiplicity_at, translation_matrix
from .pencil import Pencil, common_component
from .weights import WeightVector, affine_weight_curve

MULT_LAMBDA = WeightVector(1, 1, -2)


class InfiniteBaseLocusError(ValueError):
    """The generators share a curve component."""


@dataclass
class BasePointReport:
    rational_points: list[tuple[ProjectivePoint, int, int]]
    irrational_residual_degree: int
    finite: bool
    notes: list[str] = field(default_factory=list)

    def points(self) -> list[ProjectivePoint]:
        return [p for p, _, _ in self.rational_points]

    def to_json(self) -> dict:
        return {
            "finite": self.finite,
            "irrational_residual_degree": self.irrational_residual_degree,
            "rational_points": [
                {"point": p.to_json(), "mult_f": mf, "mult_g": mg} for p, mf, mg in self.rational_points
            ],
            "notes": self.notes,
        }


def base_points(P: Pencil) -> BasePointReport:
    """Rational common zeros of the generators with their multiplicities."""
    h = common_component(P)
    if h.degree:
        raise InfiniteBaseLocusError(f"generators share the component {format_form(h)}")
    zs = rational_common_zeros([P.f, P.g])
    rows = [(p, multiplicity_at(P.f, p), multiplicity_at(P.g, p)) for p in zs.points]
    notes = []
    if zs.residual_degree:
        notes.append("part of the base locus is not defined over Q; the criterion was not exhausted")
    return BasePointReport(rows, zs.residual_degree, True, notes)


@dataclass
class AlternativePair:
    point: ProjectivePoint
    first: HomogeneousForm
    second: HomogeneousForm
    mult_sum: int


def best_generator_pair(P: Pencil, p: ProjectivePoint) -> AlternativePair:
    """Generators of P maximizing mult_p(first) + mult_p(second).

    When both generators have the same multiplicity m and proportional
    degree-m jets, the member cancelling that jet has higher multiplicity.
    Reported for information only; certificates use the stored generators.
    """
    mf, mg = multiplicity_at(P.f, p), multiplicity_at(P.g, p)
    best = AlternativePair(p, P.f, P.g, mf + mg)
    if mf == mg:
        M = translation_matrix(p)
        f, g = change_coordinates(P.f, M), change_coordinates(P.g, M)
        key = next(k for k in f.support() if sum(k) == mf)
        c = g.coefficient(*key) / f.coefficient(*key)
        h = P.g - P.f.scale(c)
        mh = multiplicity_at(h, p)
        if mh > mg:
            best = AlternativePair(p, P.f, h, mf + mh)
    return best


def multiplicity_criterion(P: Pencil, report: BasePointReport | None = None) -> StabilityCertificate | None:
    """Certificate from the first base point (in sorted order) where the criterion fires.

    Strict firings take precedence over boundary ones.
    """
    if report is None:
        report = base_points(P)
    d = P.degree
    fired = None
    for p, mf, mg in report.rational_points:
        s3 = 3 * (mf + mg)
        if s3 > 4 * d:
            fired = (p, mf, mg, "unstable", ">")
            break
        if s3 == 4 * d and fired is None:
            fired = (p, mf, mg, "not-stable", ">=")
    if fired is None:
        return None
    p, mf, mg, verdict, rel = fired
    M = translation_matrix(p)
    lam = MULT_LAMBDA
    audit = [
        multiplicity_entry("inf", P.f, p),
        multiplicity_entry("0", P.g, p),
        {"kind": "mult-sum", "point": p.to_json(), "mult_f": mf, "mult_g": mg, "relation": rel},
        pencil_weight_entry(P, M, lam, rel),
    ]
    # the proof's identity omega(f, lambda) = 3 mult_p(f), recomputed
    wf = affine_weight_curve(change_coordinates(P.f, M), lam)
    wg = affine_weight_curve(change_coordinates(P.g, M), lam)
    notes = [f"omega(f)={wf}=3*{mf}, omega(g)={wg}=3*{mg}"]
    if wf != 3 * mf or wg != 3 * mg:
        raise AssertionError("omega(f, (1,1,-2)) differs from 3*mult after translation")
    cert = StabilityCertificate(verdict, MULTIPLICITY, P, M, lam, audit, notes)
    if not cert.is_valid():
        raise AssertionError("multiplicity certificate failed its own audit")
    return cert

