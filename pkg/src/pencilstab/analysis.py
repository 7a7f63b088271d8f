"""The full analysis pipeline behind ``pencilstab analyze``.

Order: torus at identity, base points and the multiplicity criterion, the
flag search, the member scan with its sufficient criteria, the lct screen,
pencil lct bounds at base points and the lct consistency checks.  The final
verdict is the strongest sound conclusion; contradictory certificates raise
``InternalConsistencyError``.
"""

from __future__ import annotations

import time

from .basepoints import InfiniteBaseLocusError, base_points, best_generator_pair, multiplicity_criterion
from .certificate import StabilityCertificate, frac_str
from .forms import format_form
from .consistency import thm45_consistency
from .lct import pencil_lct_lower_bound
from .members import MemberScan, lct_stability_screen, scan_members
from .pencil import Pencil
from .search import combine, pencil_stability_search
from .weights import torus_decide_pencil

REPORT_VERSION = 1


def torus_json(tv) -> dict:
    return {"status": tv.status, "lambda": None if tv.witness is None else list(tv.witness), "margin": tv.margin}


def scan_json(scan: MemberScan) -> dict:
    disc = scan.discriminant
    return {
        "discriminant_degree": disc.degree,
        "expected_degree": disc.expected_degree,
        "identically_zero": disc.is_zero,
        "general_member": scan.general_status,
        "complete": scan.complete,
        "members": [
            {
                "member": r.label,
                "order": r.order,
                "status": r.status,
                "lct_lower": None if r.lct_lower is None else frac_str(r.lct_lower),
                "reason": r.reason or (r.curve.positive if r.curve and r.curve.positive else ""),
            }
            for r in scan.records
        ],
        "notes": scan.notes,
    }


def _cert(c: StabilityCertificate | None):
    return None if c is None else c.to_json()


def analyze(P: Pencil, seed: int = 0, random_flags: int = 4, timing: bool = False) -> dict:
    """Run every criterion and return a JSON-ready report."""
    t0 = time.perf_counter()
    clock: dict[str, float] = {}

    def lap(name):
        nonlocal t0
        now = time.perf_counter()
        clock[name] = round(now - t0, 4)
        t0 = now

    pm = P.plucker()
    report: dict = {
        "version": REPORT_VERSION,
        "seed": seed,
        "input": P.to_json(),
        "plucker": {"minors": len(pm), "states": len(P.states())},
    }
    crit: dict = {}
    report["criteria"] = crit
    crit["torus_at_identity"] = torus_json(torus_decide_pencil(P))
    lap("torus")

    certs: list[StabilityCertificate] = []
    try:
        rep = base_points(P)
        crit["base_points"] = rep.to_json()
        alt = []
        for p, mf, mg in rep.rational_points:
            bp = best_generator_pair(P, p)
            if bp.mult_sum > mf + mg:
                # informational only; the criterion uses the stored generators
                alt.append({"point": p.to_json(), "first": format_form(bp.first),
                            "second": format_form(bp.second), "mult_sum": bp.mult_sum})
        crit["base_points"]["alternative_pairs"] = alt
        mc = multiplicity_criterion(P, rep)
    except InfiniteBaseLocusError as exc:
        rep = None
        crit["base_points"] = {"finite": False, "error": str(exc)}
        mc = None
    crit["multiplicity"] = _cert(mc)
    if mc is not None:
        certs.append(mc)
    lap("basepoints")

    unstable = mc is not None and mc.verdict == "unstable"
    scan = None
    if not unstable and P.degree >= 2:
        scan = scan_members(P, seed)
        crit["members"] = scan_json(scan)
    else:
        crit["members"] = None
    lap("members")

    sr = pencil_stability_search(P, seed, random_flags, positive=not unstable, scan=scan)
    crit["flag_search"] = {
        "flags_tried": sr.flags_tried,
        "degraded": sr.degraded,
        "notes": sr.notes,
        "certificates": [c.to_json() for c in sr.certificates],
    }
    certs.extend(sr.certificates)
    lap("search")

    lc = None
    if scan is not None and not any(c.verdict == "unstable" for c in certs):
        lc = lct_stability_screen(P, scan)
        if lc is not None:
            certs.append(lc)
    crit["lct_screen"] = _cert(lc)

    bounds = []
    if rep is not None:
        for p in rep.points():
            b = pencil_lct_lower_bound(P, p)
            bounds.append({"point": p.to_json(), **b.to_json()})
    crit["pencil_lct_bounds"] = bounds
    lap("lct")

    final = combine(certs, P)
    for c in certs:
        if not c.is_valid():
            raise AssertionError(f"{c.criterion} certificate failed its own audit")
    report["verdict"] = final.verdict
    report["criterion"] = final.criterion
    report["certificate"] = final.to_json()
    checks = thm45_consistency(P, final, scan) if rep is not None and final.verdict != "inconclusive" else []
    report["lct_consistency"] = [c.to_json() for c in checks]
    lap("consistency")
    if timing:
        report["timing"] = clock
    return report

