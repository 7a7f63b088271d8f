"""Member-by-member analysis of a pencil and the sufficient criteria built on it.

Every member outside the roots of the discriminant is smooth.  The rational
roots are analysed as curves; an irrational root of order one is a member
with a single ordinary node (lct 1).  Anything else blocks the positive
criteria, which then return nothing rather than guess.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .certificate import (
    LCT,
    MEMBER_STABILITY,
    ONE_SSS,
    TWO_SSS,
    StabilityCertificate,
    curve_weight_entry,
    discriminant_entry,
    lct_entry,
    member_entry,
    param_str,
)
from .curves import CurveStatus, curve_flags, curve_stability_status
from .discriminant import Discriminant, SpecialMembers, pencil_discriminant
from .flags import dedupe
from .forms import HomogeneousForm, change_coordinates, format_form
from .pencil import Pencil, member
from .weights import STRICTLY_SEMISTABLE, StateSet, torus_decide

INF = float("inf")


@dataclass
class MemberRecord:
    parameter: object  # Fraction, inf, or a sympy Poly for a conjugate family
    order: int  # order of vanishing of the discriminant
    form: HomogeneousForm | None
    status: str
    lct_lower: Fraction | None
    curve: CurveStatus | None = None
    reason: str = ""

    @property
    def label(self) -> str:
        if self.form is None:
            return f"root of {self.parameter.as_expr()}"
        return param_str(self.parameter)


@dataclass
class MemberScan:
    pencil: Pencil
    discriminant: Discriminant
    special: SpecialMembers | None
    records: list[MemberRecord]
    general_status: str  # status of every member off the discriminant
    complete: bool  # every member has a known status
    notes: list[str] = field(default_factory=list)

    def non_stable(self) -> list[MemberRecord]:
        return [r for r in self.records if r.status != "stable"]


def _general_status(d: int) -> tuple[str, Fraction]:
    # smooth members: stable for d >= 3 (classical), lct 1 always
    return ("stable" if d >= 3 else "inconclusive"), Fraction(1)


def _node_status(d: int) -> str:
    # a single ordinary node has lct 1; compare with 3/d
    if Fraction(1) > Fraction(3, d):
        return "stable"
    if Fraction(1) == Fraction(3, d):
        return "semistable"
    return "inconclusive"


def scan_members(P: Pencil, seed: int = 0) -> MemberScan:
    d = P.degree
    disc = pencil_discriminant(P, seed)
    gen_status, _ = _general_status(d)
    if disc.is_zero:
        return MemberScan(P, disc, None, [], "inconclusive", False, ["every member is singular"])
    special = disc.special_members()
    records = []
    complete = gen_status != "inconclusive"
    for s, order in special.rational:
        f = member(P, s)
        cs = curve_stability_status(f)
        records.append(MemberRecord(s, order, f, cs.verdict, cs.lct.estimate.best_lower, cs))
        if cs.verdict == "inconclusive":
            complete = False
    for poly, order in special.irrational:
        if order == 1:
            st = _node_status(d)
            records.append(MemberRecord(poly, 1, None, st, Fraction(1), None, "simple root: one ordinary node"))
            if st == "inconclusive":
                complete = False
        else:
            records.append(MemberRecord(poly, order, None, "inconclusive", None, None, "conjugate members not analysed"))
            complete = False
    return MemberScan(P, disc, special, records, gen_status, complete)


# ---------------------------------------------------------------------------
# Sufficient criteria


def _base_audit(scan: MemberScan) -> list[dict]:
    out = [discriminant_entry(scan.discriminant, scan.special)]
    out.append({"kind": "general-member", "status": scan.general_status, "reason": "off the discriminant every member is smooth"})
    return out


def _member_audit(rec: MemberRecord, d: int) -> list[dict]:
    reason = rec.reason or (rec.curve.positive or "" if rec.curve else "")
    out = [member_entry(rec.label, rec.status, reason)]
    if rec.form is not None and rec.curve is not None:
        if rec.curve.positive == "smooth":
            out.append({"kind": "smooth", "member": rec.label, "form": format_form(rec.form), "degree": d})
        elif rec.curve.positive == "lct":
            rel = ">" if rec.status == "stable" else ">="
            out.append(lct_entry(rec.label, rec.form, rec.lct_lower, rel, Fraction(3, d)))
        if rec.curve.witness is not None and rec.status in ("strictly-semistable", "not-stable"):
            M, lam = rec.curve.witness
            out.append(curve_weight_entry(rec.form, M, lam, ">=", rec.label))
    return out


def member_stability_criterion(scan: MemberScan) -> StabilityCertificate | None:
    """Only semistable (resp. stable) members gives a semistable (resp. stable) pencil."""
    if not scan.complete or scan.general_status == "inconclusive":
        return None
    statuses = [r.status for r in scan.records]
    if all(s == "stable" for s in statuses):
        verdict = "stable"
    elif all(s in ("stable", "semistable", "strictly-semistable") for s in statuses):
        verdict = "semistable"
    else:
        return None
    audit = _base_audit(scan)
    for r in scan.records:
        audit.extend(_member_audit(r, scan.pencil.degree))
    return StabilityCertificate(verdict, MEMBER_STABILITY, scan.pencil, audit=audit)


def one_sss_criterion(scan: MemberScan) -> StabilityCertificate | None:
    """At most one member that is semistable but not known stable, all others stable."""
    if scan.general_status != "stable" or any(r.status == "inconclusive" for r in scan.records):
        return None
    rest = [r for r in scan.records if r.status != "stable"]
    if len(rest) != 1 or rest[0].status not in ("strictly-semistable", "semistable"):
        return None
    if rest[0].form is None:
        return None
    audit = _base_audit(scan)
    for r in scan.records:
        audit.extend(_member_audit(r, scan.pencil.degree))
    return StabilityCertificate("stable", ONE_SSS, scan.pencil, audit=audit)


def two_sss_criterion(scan: MemberScan) -> StabilityCertificate | None:
    """Exactly two semistable non-stable members with a common boundary subgroup.

    Both members must lie on the boundary of their torus chambers for one
    subgroup in one coordinate system; the union of their state sets then
    has a weak but no strict witness.
    """
    if scan.general_status != "stable" or any(r.status == "inconclusive" for r in scan.records):
        return None
    rest = [r for r in scan.records if r.status != "stable"]
    if len(rest) != 2 or any(r.form is None or r.status not in ("strictly-semistable", "semistable") for r in rest):
        return None
    f, g = rest[0].form, rest[1].form
    d = scan.pencil.degree
    pts = sorted(
        {p for r in rest for p, _ in r.curve.lct.points},
        key=lambda p: p.sort_key(),
    )
    flags = dedupe(curve_flags(f, pts) + curve_flags(g, pts))
    for M in flags:
        fm, gm = change_coordinates(f, M), change_coordinates(g, M)
        union = StateSet(frozenset(fm.support()) | frozenset(gm.support()), d, "curve")
        tv = torus_decide(union)
        if tv.status == STRICTLY_SEMISTABLE:
            audit = _base_audit(scan)
            for r in scan.records:
                audit.extend(_member_audit(r, d))
            audit.append(curve_weight_entry(f, M, tv.witness, "=", rest[0].label))
            audit.append(curve_weight_entry(g, M, tv.witness, "=", rest[1].label))
            return StabilityCertificate(
                "strictly-semistable", TWO_SSS, scan.pencil, M, tv.witness, audit
            )
    return None


def lct_stability_screen(P: Pencil, scan: MemberScan | None = None) -> StabilityCertificate | None:
    """Every member with lct >= 3/d (resp. > 3/d) gives semistable (resp. stable)."""
    if scan is None:
        scan = scan_members(P)
    d = P.degree
    if scan.discriminant.is_zero:
        return None
    lows = [Fraction(1)]  # general members are smooth
    for r in scan.records:
        if r.lct_lower is None:
            return None
        lows.append(r.lct_lower)
    worst = min(lows)
    t = Fraction(3, d)
    if worst > t:
        verdict, rel = "stable", ">"
    elif worst >= t:
        verdict, rel = "semistable", ">="
    else:
        return None
    audit = [discriminant_entry(scan.discriminant, scan.special)]
    audit.append({"kind": "general-member", "status": "smooth", "reason": "lct 1 off the discriminant"})
    for r in scan.records:
        if r.form is not None:
            audit.append(lct_entry(r.label, r.form, r.lct_lower, rel, t))
        else:
            audit.append(member_entry(r.label, "lct 1", r.reason))
    return StabilityCertificate(verdict, LCT, P, audit=audit)
