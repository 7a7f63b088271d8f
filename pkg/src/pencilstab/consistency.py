"""Literal checks of the lct implications against computed data.

Each check returns a list of ``Implication`` records.  A record is marked
``testable=False`` when some lct it needs is not known exactly; such records
never count as failures.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .basepoints import base_points
from .certificate import StabilityCertificate, frac_str, param_str
from .forms import HomogeneousForm, ProjectivePoint
from .lct import curve_lct, lct_at_point, pencil_lct_lower_bound
from .members import MemberScan, scan_members
from .pencil import Pencil, member


@dataclass
class Implication:
    name: str
    testable: bool
    holds: bool
    detail: str

    @property
    def failed(self) -> bool:
        return self.testable and not self.holds

    def to_json(self) -> dict:
        return {"name": self.name, "testable": self.testable, "holds": self.holds, "detail": self.detail}


def sample_members(P: Pencil, scan: MemberScan | None = None) -> list[tuple[str, HomogeneousForm]]:
    """Generators, a few fixed combinations and every rational special member."""
    params = [float("inf"), Fraction(0), Fraction(1), Fraction(-1), Fraction(2)]
    if scan is not None and scan.special is not None:
        params += [s for s, _ in scan.special.rational]
    out, seen = [], set()
    for s in params:
        key = param_str(s)
        if key not in seen:
            seen.add(key)
            out.append((key, member(P, s)))
    return out


def known_lct_p(f: HomogeneousForm, p: ProjectivePoint) -> Fraction | None:
    return lct_at_point(f, p).exact


def prop41_checks(P: Pencil, scan: MemberScan | None = None) -> list[Implication]:
    """Pencil bound at each rational base point against each member's exact lct_p."""
    out = []
    rep = base_points(P)
    members = sample_members(P, scan)
    for p in rep.points():
        bound = pencil_lct_lower_bound(P, p).capped
        for label, f in members:
            val = known_lct_p(f, p)
            name = f"prop41 at {p} member {label}"
            if val is None:
                out.append(Implication(name, False, True, "lct_p unknown"))
            else:
                out.append(Implication(name, True, bound <= val, f"bound {frac_str(bound)} vs lct_p {frac_str(val)}"))
    return out


def thm46_checks(P: Pencil, verdict: str, scan: MemberScan | None = None) -> list[Implication]:
    """Semistable (resp. stable) forces lct_p >= 3/(2d) (resp. >) at base points."""
    if verdict not in ("semistable", "stable", "strictly-semistable"):
        return []
    strict = verdict == "stable"
    t = Fraction(3, 2 * P.degree)
    out = []
    for p in base_points(P).points():
        for label, f in sample_members(P, scan):
            val = known_lct_p(f, p)
            name = f"thm46 at {p} member {label}"
            if val is None:
                out.append(Implication(name, False, True, "lct_p unknown"))
                continue
            ok = val > t if strict else val >= t
            out.append(Implication(name, True, ok, f"lct_p {frac_str(val)} {'>' if strict else '>='} {frac_str(t)}"))
    return out


def _known_member_lcts(P: Pencil, scan: MemberScan | None):
    """(label, exact global lct) pairs plus whether the list covers every member."""
    vals = []
    for label, f in sample_members(P, scan):
        est = curve_lct(f).estimate
        if est.exact is not None:
            vals.append((label, est.exact))
    if scan is None or scan.special is None:
        return vals, False

    def known(r) -> bool:
        if r.form is None:
            return r.order == 1  # a single node
        return r.curve is not None and r.curve.lct.estimate.exact is not None

    covers_all = all(known(r) for r in scan.records)
    if covers_all:
        vals.append(("general", Fraction(1)))
        vals += [(r.label, Fraction(1)) for r in scan.records if r.form is None]
    return vals, covers_all


def thm45_checks(P: Pencil, verdict: str, scan: MemberScan | None = None) -> list[Implication]:
    """Unstable (resp. not stable) with a member of lct alpha forces a member
    with lct < 3 alpha / (2 d alpha - 3) (resp. <=)."""
    if verdict not in ("unstable", "not-stable", "strictly-semistable"):
        return []
    strict = verdict == "unstable"
    d = P.degree
    vals, covers_all = _known_member_lcts(P, scan)
    out = []
    for label, alpha in vals:
        name = f"thm45 alpha from member {label}"
        denom = 2 * d * alpha - 3
        if denom <= 0:
            out.append(Implication(name, True, True, f"vacuous: 2d*alpha - 3 = {frac_str(denom)} <= 0"))
            continue
        bound = 3 * alpha / denom
        hits = [lab for lab, v in vals if (v < bound if strict else v <= bound)]
        rel = "<" if strict else "<="
        if hits:
            out.append(Implication(name, True, True, f"member {hits[0]} has lct {rel} {frac_str(bound)}"))
        elif covers_all:
            out.append(Implication(name, True, False, f"no member has lct {rel} {frac_str(bound)}"))
        else:
            out.append(Implication(name, False, True, "no witness among members with known lct"))
    return out


def thm45_consistency(P: Pencil, certificate: StabilityCertificate, scan: MemberScan | None = None) -> list[Implication]:
    """Checks matching the certificate's direction: 4.5 for negative verdicts, 4.6 for positive ones."""
    if scan is None and P.degree >= 2:
        scan = scan_members(P)
    v = certificate.verdict
    return thm45_checks(P, v, scan) + thm46_checks(P, v, scan)
