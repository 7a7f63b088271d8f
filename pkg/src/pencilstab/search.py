"""Flag search for destabilizing subgroups and the combined search verdict."""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .algebra import rational_common_zeros
from .basepoints import InfiniteBaseLocusError, base_points
from .certificate import TORUS_SEARCH, StabilityCertificate, pencil_weight_entry
from .curves import InternalConsistencyError
from .flags import dedupe, flag_matrix, line_through, random_shears, tangent_lines
from .forms import Matrix3
from .members import MemberScan, member_stability_criterion, one_sss_criterion, scan_members, two_sss_criterion
from .pencil import Pencil, change_pencil_coordinates, common_component
from .weights import STRICTLY_SEMISTABLE, UNSTABLE, TorusVerdict, torus_decide_pencil


def thread_count() -> int:
    try:
        return max(1, int(os.environ.get("PENCILSTAB_THREADS", "1")))
    except ValueError:
        return 1


@dataclass
class FlagCandidates:
    matrices: list[Matrix3]
    degraded: bool
    notes: list[str] = field(default_factory=list)


def flag_candidates(P: Pencil, seed: int = 0, random_flags: int = 4, scan: MemberScan | None = None,
                    max_pair_points: int = 8) -> FlagCandidates:
    """Deterministic, de-duplicated coordinate changes to test.

    Order: identity; base points with the generators' tangent lines;
    singular points of the generators and of rational special members;
    lines joining candidate points; seeded random shears.
    """
    notes = []
    mats = [Matrix3.identity()]
    points = []
    tangent_src = []  # (point, form) pairs whose tangent lines are tried
    degraded = False
    if common_component(P).degree:
        notes.append("common component: point-derived flags skipped")
        degraded = True
    else:
        rep = base_points(P)
        for p, _, _ in rep.rational_points:
            points.append(p)
            tangent_src += [(p, P.f), (p, P.g)]
        if not rep.rational_points:
            degraded = True
            notes.append("search degraded: no rational base point")
        forms = [P.f, P.g]
        if scan is not None:
            forms += [r.form for r in scan.records if r.form is not None]
        for h in forms:
            if h.degree < 2:
                continue
            zs = rational_common_zeros(list(h.gradient()))
            for p in zs.points:
                if p not in points:
                    points.append(p)
                tangent_src.append((p, h))
    for p in points:
        mats.append(flag_matrix(p))
    for p, h in tangent_src:
        for ell, _ in tangent_lines(h, p):
            mats.append(flag_matrix(p, ell))
    pts = points[:max_pair_points]
    for a in range(len(pts)):
        for b in range(len(pts)):
            if a != b:
                mats.append(flag_matrix(pts[a], line_through(pts[a], pts[b])))
    mats += random_shears(random_flags, seed)
    return FlagCandidates(dedupe(mats), degraded, notes)


def _decide(args) -> TorusVerdict:
    P, M = args
    return torus_decide_pencil(change_pencil_coordinates(P, M))


def torus_search(P: Pencil, flags: list[Matrix3]):
    """(first strict witness, first weak witness) in list order, each (M, verdict)."""
    with ThreadPoolExecutor(max_workers=thread_count()) as ex:
        verdicts = list(ex.map(_decide, [(P, M) for M in flags]))
    strict = weak = None
    for M, tv in zip(flags, verdicts):
        if tv.status == UNSTABLE and strict is None:
            strict = (M, tv)
        elif tv.status == STRICTLY_SEMISTABLE and weak is None:
            weak = (M, tv)
    return strict, weak


def torus_certificate(P: Pencil, M: Matrix3, tv: TorusVerdict) -> StabilityCertificate:
    strict = tv.status == UNSTABLE
    audit = [pencil_weight_entry(P, M, tv.witness, ">" if strict else ">=")]
    return StabilityCertificate("unstable" if strict else "not-stable", TORUS_SEARCH, P, M, tv.witness, audit)


@dataclass
class SearchResult:
    certificate: StabilityCertificate
    certificates: list[StabilityCertificate]
    flags_tried: int
    degraded: bool
    notes: list[str] = field(default_factory=list)


def combine(certs: list[StabilityCertificate], P: Pencil) -> StabilityCertificate:
    """Strongest sound conclusion; contradictory certificates raise."""
    neg = [c for c in certs if c.verdict in ("unstable", "not-stable", "strictly-semistable")]
    pos = [c for c in certs if c.verdict in ("stable", "semistable", "strictly-semistable")]
    unstable = next((c for c in certs if c.verdict == "unstable"), None)
    not_stable = next((c for c in neg if c.verdict in ("not-stable", "strictly-semistable")), None)
    stable = next((c for c in pos if c.verdict == "stable"), None)
    semi = next((c for c in pos if c.verdict in ("semistable", "strictly-semistable")), None)
    if unstable and (stable or semi):
        raise InternalConsistencyError(
            f"{unstable.criterion} says unstable but {(stable or semi).criterion} says {(stable or semi).verdict}"
        )
    if not_stable and stable:
        raise InternalConsistencyError(f"{not_stable.criterion} says not stable but {stable.criterion} says stable")
    if unstable:
        return unstable
    if not_stable and not_stable.verdict == "strictly-semistable":
        return not_stable
    if not_stable and semi:
        return StabilityCertificate(
            "strictly-semistable",
            semi.criterion,
            P,
            not_stable.flag,
            not_stable.lam,
            not_stable.audit + semi.audit,
            [f"non-stability from {not_stable.criterion}", f"semistability from {semi.criterion}"],
        )
    if not_stable:
        return not_stable
    if stable:
        return stable
    if semi:
        return semi
    return StabilityCertificate("inconclusive", TORUS_SEARCH, P, notes=["no criterion applied"])


def pencil_stability_search(P: Pencil, seed: int = 0, random_flags: int = 4, positive: bool = True,
                            scan: MemberScan | None = None) -> SearchResult:
    """Torus search over flag candidates, then the member-based sufficient criteria."""
    notes = []
    if positive and scan is None and P.degree >= 2:
        scan = scan_members(P, seed)
    cands = flag_candidates(P, seed, random_flags, scan)
    strict, weak = torus_search(P, cands.matrices)
    certs = []
    if strict is not None:
        certs.append(torus_certificate(P, *strict))
    elif weak is not None:
        certs.append(torus_certificate(P, *weak))
    if positive and strict is None and scan is not None:
        for crit in (member_stability_criterion, one_sss_criterion, two_sss_criterion):
            c = crit(scan)
            if c is not None:
                certs.append(c)
    final = combine(certs, P)
    return SearchResult(final, certs, len(cands.matrices), cands.degraded, cands.notes + notes)


__all__ = [
    "FlagCandidates",
    "SearchResult",
    "flag_candidates",
    "pencil_stability_search",
    "torus_search",
    "combine",
    "InfiniteBaseLocusError",
]
