"""Corpus verification harness with TAP output.

Every suite yields ``(name, ok, detail)`` rows; ``verify_corpus`` numbers
them and reports ``ok``/``not ok`` lines.  Untestable implications are
printed as skipped and never fail.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .analysis import analyze
from .basepoints import multiplicity_criterion
from .certificate import StabilityCertificate, frac_str
from .consistency import prop41_checks, thm45_consistency
from .corpus import CorpusEntry, by_suite, load_corpus
from .forms import ORIGIN
from .lct import germ_to_form, load_oracle_table, validate_oracle_table, weighted_mult_bound
from .members import scan_members, two_sss_criterion
from .pencil import change_pencil_coordinates
from .search import flag_candidates
from .weights import UNSTABLE, WeightVector, affine_weight_pencil, threshold_margin, torus_decide_pencil


@dataclass
class TapLine:
    suite: str
    name: str
    ok: bool
    detail: str = ""
    skip: bool = False


@dataclass
class VerifyResult:
    lines: list[TapLine] = field(default_factory=list)

    @property
    def failures(self) -> list[TapLine]:
        return [t for t in self.lines if not t.ok and not t.skip]

    @property
    def passed(self) -> bool:
        return not self.failures

    def failed_suites(self) -> list[str]:
        return sorted({t.suite for t in self.failures})

    def tap(self) -> str:
        out = ["TAP version 13", f"1..{len(self.lines)}"]
        for k, t in enumerate(self.lines, 1):
            status = "ok" if t.ok or t.skip else "not ok"
            line = f"{status} {k} - {t.suite}: {t.name}"
            if t.skip:
                line += f" # SKIP {t.detail}"
            elif t.detail:
                line += f" # {t.detail}"
            out.append(line)
        out.append(f"# {len(self.lines) - len(self.failures)} passed, {len(self.failures)} failed")
        return "\n".join(out) + "\n"


def lemma42_probe(rows, probes: int, seed: int = 0):
    """Weighted bound at random normalized subgroups against each oracle value."""
    rng = random.Random(seed)
    for row in rows:
        f = germ_to_form(row.germ_map())
        bad = None
        tried = 0
        while tried < probes:
            b1 = rng.randint(1, 40)
            b2 = rng.randint(1, b1)
            lam = WeightVector.from_b(b1, b2)
            tried += 1
            try:
                bound = weighted_mult_bound(f, ORIGIN, lam)
            except ValueError:
                continue
            if bound < row.lct:
                bad = (lam, bound)
                break
        detail = "" if bad is None else f"lambda {tuple(bad[0])} gives {frac_str(bad[1])} < {frac_str(row.lct)}"
        yield row.name, bad is None, detail


def _thm51(entry: CorpusEntry, report: dict) -> tuple[bool, str]:
    P = entry.pencil()
    mc = multiplicity_criterion(P)
    want = entry.expect.get("verdict")
    if mc is None:
        return False, "criterion did not fire"
    if mc.verdict != want:
        return False, f"fired as {mc.verdict}, expected {want}"
    if not mc.is_valid():
        return False, "certificate audit failed"
    # independent recomputation of the weight inequality at the emitted witness
    omega = affine_weight_pencil(change_pencil_coordinates(P, mc.flag), mc.lam)
    margin = threshold_margin(omega, mc.lam, 2 * P.degree)
    thr = Fraction(2 * P.degree, 3) * (mc.lam[0] + mc.lam[1] - 2 * mc.lam[2])
    if (margin <= 0) if mc.verdict == "unstable" else (margin < 0):
        return False, f"omega {omega} vs threshold {frac_str(thr)}"
    if mc.verdict == "unstable":
        tv = torus_decide_pencil(change_pencil_coordinates(P, mc.flag))
        if tv.status != UNSTABLE:
            return False, "torus decision at the criterion's flag is not unstable"
        if mc.flag not in flag_candidates(P).matrices:
            return False, "criterion flag missing from the search candidates"
        if report["verdict"] != "unstable":
            return False, f"pipeline verdict {report['verdict']}"
    rel = ">" if mc.verdict == "unstable" else ">="
    return True, f"omega {omega} {rel} {frac_str(thr)}"


def verify_corpus(path: str | Path | None = None, oracle: str | Path | None = None, lemma42_probes: int = 20,
                  seed: int = 0) -> VerifyResult:
    """Run every invariant suite over the corpus directory."""
    entries = load_corpus(path)
    res = VerifyResult()
    add = res.lines.append

    if oracle is None and path is not None and (Path(path) / "lct_oracle.json").exists():
        oracle = Path(path) / "lct_oracle.json"
    rows = load_oracle_table(None if oracle is None else str(oracle))
    for row, ok, msg in validate_oracle_table(rows):
        add(TapLine("oracle-table", row.name, ok, "" if ok else msg))
    for name, ok, msg in lemma42_probe(rows, lemma42_probes, seed):
        add(TapLine("lemma42-bound", name, ok, msg))

    reports = {}
    for e in entries:
        try:
            reports[e.name] = analyze(e.pencil(), seed)
            add(TapLine("soundness", e.name, True, reports[e.name]["verdict"]))
        except Exception as exc:  # the soundness detector or any crash
            add(TapLine("soundness", e.name, False, f"{type(exc).__name__}: {exc}"))

    for e in by_suite(entries, "multiplicity"):
        if e.name in reports:
            ok, msg = _thm51(e, reports[e.name])
            add(TapLine("multiplicity", e.name, ok, msg))

    for e in by_suite(entries, "one-sss"):
        r = reports.get(e.name)
        if r is None:
            continue
        ok = r["verdict"] == e.expect.get("verdict") and any(
            c["criterion"] == e.expect.get("criterion") for c in r["criteria"]["flag_search"]["certificates"]
        )
        add(TapLine("one-sss", e.name, ok, f"verdict {r['verdict']} via {r['criterion']}"))

    for e in by_suite(entries, "two-sss"):
        # consistency of the characterization: a certificate appears exactly
        # when a common boundary subgroup is found, and it validates
        scan = scan_members(e.pencil(), seed)
        rest = [m for m in scan.records if m.status != "stable"]
        hyp = scan.general_status == "stable" and len(rest) == 2 and all(
            m.status in ("strictly-semistable", "semistable") and m.form is not None for m in rest
        )
        cert = two_sss_criterion(scan)
        if not hyp:
            add(TapLine("two-sss", e.name, True, "hypotheses not met", skip=True))
        elif cert is None:
            r = reports.get(e.name)
            ok = r is not None and r["verdict"] not in ("unstable", "not-stable", "strictly-semistable")
            add(TapLine("two-sss", e.name, ok, "hypotheses hold; no common boundary subgroup"))
        else:
            add(TapLine("two-sss", e.name, cert.is_valid(), "common boundary subgroup found"))

    for e in by_suite(entries, "lct"):
        r = reports.get(e.name)
        if r is None:
            continue
        lc = r["criteria"]["lct_screen"]
        got = None if lc is None else lc["verdict"]
        add(TapLine("lct-screen", e.name, got == e.expect.get("verdict"), f"screen gives {got}"))

    for e in by_suite(entries, "misc"):
        r = reports.get(e.name)
        if r is not None:
            want = e.expect.get("verdict")
            add(TapLine("verdict", e.name, r["verdict"] == want, f"{r['verdict']} (expected {want})"))

    for e in entries:
        r = reports.get(e.name)
        if r is None or not r["criteria"]["base_points"].get("finite", False):
            continue
        P = e.pencil()
        scan = scan_members(P, seed) if P.degree >= 2 and r["criteria"]["members"] is not None else None
        for imp in prop41_checks(P, scan):
            add(TapLine("prop41-bound", f"{e.name} {imp.name}", imp.holds, imp.detail, skip=not imp.testable))
        cert = StabilityCertificate.from_json(r["certificate"])
        for imp in thm45_consistency(P, cert, scan):
            suite = "thm45" if imp.name.startswith("thm45") else "thm46"
            add(TapLine(suite, f"{e.name} {imp.name}", imp.holds, imp.detail, skip=not imp.testable))
    return res


__all__ = ["verify_corpus", "VerifyResult", "TapLine", "lemma42_probe"]
