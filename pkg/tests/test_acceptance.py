"""Acceptance criteria 1-11, one summary line each.

Two halves are known to fail and are marked as strict expected failures:
the pencil lct lower bound is not a lower bound for every member (7a), and
no pencil can satisfy the two-member characterization while having only
semistable members (9b).  Both are documented in the README.
"""

import json
import os
import random
import subprocess
import sys
import time
from fractions import Fraction

import pytest

from pencilstab.audit import random_member_pair, random_normalized_lambda, random_pencil
from pencilstab.basepoints import multiplicity_criterion
from pencilstab.consistency import known_lct_p, sample_members, thm46_checks
from pencilstab.corpus import by_suite, load_corpus
from pencilstab.forms import ORIGIN, HomogeneousForm
from pencilstab.lct import (
    germ_to_form,
    load_oracle_table,
    newton_lct_candidate,
    parse_germ,
    pencil_lct_lower_bound,
    weighted_mult_bound,
)
from pencilstab.members import lct_stability_screen, member_stability_criterion, scan_members
from pencilstab.pencil import Pencil, change_pencil_coordinates
from pencilstab.search import pencil_stability_search
from pencilstab.weights import (
    StateSet,
    WeightVector,
    affine_weight_curve,
    affine_weight_pencil,
    brute_force_torus,
    equalizing_partner,
    torus_decide,
)

from conftest import acceptance_line

CORPUS = load_corpus()


# -- 1 ---------------------------------------------------------------------

def test_c01_torus_matches_brute_force():
    rng = random.Random(1)
    t0 = time.perf_counter()
    mismatches, n = 0, 0
    for k in range(500):
        d = 1 + k % 5
        P = random_pencil(d, rng, height=9, density=rng.choice([0.15, 0.3, 0.6]))
        S = StateSet.of_pencil(P)
        if torus_decide(S).status != brute_force_torus(S, 3 * d):
            mismatches += 1
        n += 1
    dt = time.perf_counter() - t0
    ok = mismatches == 0 and dt < 60
    acceptance_line("criterion 1", ok, f"{n} pencils, {mismatches} mismatches, {dt:.1f}s")
    assert ok


# -- 2 and 3 ---------------------------------------------------------------

@pytest.fixture(scope="module")
def weight_trials():
    rng = random.Random(2)
    rows = []
    for k in range(10_000):
        d = 1 + k % 6
        P = random_pencil(d, rng, height=9, density=0.35)
        lam = random_normalized_lambda(rng, 6 * d)
        f, g = random_member_pair(P, rng)
        wf, wg, wP = affine_weight_curve(f, lam), affine_weight_curve(g, lam), affine_weight_pencil(P, lam)
        part = equalizing_partner(P, f, lam)
        rows.append((wf + wg <= wP, part.audit.omega_P <= part.audit.omega_f + part.audit.omega_g, part.audit.equality))
    return rows


def test_c02_sum_inequality(weight_trials):
    bad = sum(not r[0] for r in weight_trials)
    ok = bad == 0 and len(weight_trials) >= 10_000
    acceptance_line("criterion 2", ok, f"{len(weight_trials)} triples, {bad} violations")
    assert ok


def test_c03_partner_construction(weight_trials):
    upper = sum(not r[1] for r in weight_trials)
    eq = sum(not r[2] for r in weight_trials)
    ok = upper == 0 and eq == 0
    acceptance_line("criterion 3", ok, f"{len(weight_trials)} trials, {upper} bound failures, {eq} non-equalities")
    assert ok


# -- 4 ---------------------------------------------------------------------

def test_c04_multiplicity_witnesses():
    entries = by_suite(CORPUS, "multiplicity")
    good = 0
    degrees = set()
    boundary = 0
    x3y3 = None
    for e in entries:
        P = e.pencil()
        c = multiplicity_criterion(P)
        if c is None or c.verdict != e.expect["verdict"] or c.lam != (1, 1, -2):
            continue
        degrees.add(P.degree)
        omega = affine_weight_pencil(change_pencil_coordinates(P, c.flag), c.lam)
        thr = Fraction(2 * P.degree, 3) * (c.lam[0] + c.lam[1] - 2 * c.lam[2])
        if c.verdict == "unstable" and omega > thr or c.verdict == "not-stable" and omega >= thr:
            good += 1
            boundary += c.verdict == "not-stable"
        if e.name == "x3-y3":
            x3y3 = (omega, thr)
    ok = len(entries) == 20 and good == 20 and degrees == {3, 4, 5, 6} and boundary > 0 and x3y3 == (18, 12)
    acceptance_line("criterion 4", ok, f"{good}/{len(entries)} witnesses, {boundary} boundary, x3-y3 omega {x3y3[0]} > {x3y3[1]}")
    assert ok


# -- 5 ---------------------------------------------------------------------

def test_c05_newton_oracle():
    cases = [("u*v", Fraction(1)), ("u^2 - v^3", Fraction(5, 6)), ("u^2 - v^4", Fraction(3, 4)),
             ("u^3 - v^3", Fraction(2, 3))]
    cases += [(f"u^2 - v^{n + 1}", Fraction(1, 2) + Fraction(1, n + 1)) for n in range(1, 13)]
    cases += [(f"u^{m} - v^{m}", Fraction(2, m)) for m in range(2, 11)]
    hits = 0
    for germ, want in cases:
        est = newton_lct_candidate(parse_germ(germ))
        hits += est.nondegeneracy_checked and est.exact == want
    ok = hits == len(cases)
    acceptance_line("criterion 5", ok, f"{hits}/{len(cases)} exact matches")
    assert ok


# -- 6 ---------------------------------------------------------------------

def test_c06_weighted_bound_never_below_oracle():
    rng = random.Random(6)
    rows = load_oracle_table()
    violations, probes = 0, 0
    for row in rows:
        f = germ_to_form(row.germ_map())
        done = 0
        while done < 200:
            b1 = rng.randint(1, 60)
            b2 = rng.randint(1, b1)
            lam = WeightVector.from_b(b1, b2)
            if lam.ay == lam.az:
                continue
            done += 1
            violations += weighted_mult_bound(f, ORIGIN, lam) < row.lct
        probes += done
    ok = violations == 0
    acceptance_line("criterion 6", ok, f"{len(rows)} germs x 200 subgroups, {violations} violations")
    assert ok


# -- 7 ---------------------------------------------------------------------

def _prop41_violations():
    out, tested = [], 0
    for e in by_suite(CORPUS, "multiplicity"):
        P = e.pencil()
        scan = scan_members(P) if P.degree >= 2 else None
        from pencilstab.basepoints import base_points

        for p in base_points(P).points():
            bound = pencil_lct_lower_bound(P, p).capped
            for label, f in sample_members(P, scan):
                val = known_lct_p(f, p)
                if val is None:
                    continue
                tested += 1
                if bound > val:
                    out.append(f"{e.name} member {label}: bound {bound} > lct_p {val}")
    return out, tested


@pytest.mark.xfail(strict=True, reason="the pencil bound exceeds lct_p of special members, e.g. the triple-line member")
def test_c07a_pencil_bound_validity():
    bad, tested = _prop41_violations()
    ok = not bad
    acceptance_line("criterion 7a", ok, f"{tested} comparisons, {len(bad)} violations" + (f"; first: {bad[0]}" if bad else ""))
    assert ok


def test_c07b_breakpoints_beat_grid():
    rng = random.Random(7)
    grid = sorted({Fraction(p, q) for q in range(1, 65) for p in range(-q, q + 1) if Fraction(-1, 2) < Fraction(p, q) <= 1})
    wins, n = 0, 0
    while n < 200:
        d = 1 + n % 5
        P = random_pencil(d, rng, height=9, density=0.4)
        f = HomogeneousForm(d, {k: v for k, v in P.f.coeffs.items() if k != (0, 0)})
        g = HomogeneousForm(d, {k: v for k, v in P.g.coeffs.items() if k != (0, 0)})
        if f.is_zero() or g.is_zero():
            continue
        try:
            Q = Pencil(f, g)
        except ValueError:
            continue
        n += 1
        b = pencil_lct_lower_bound(Q, ORIGIN)
        states = Q.states()
        for a in grid:
            p, q = a.numerator, a.denominator
            val = Fraction(3 * (q + p), min((2 * q + p) * u + (q + 2 * p) * v for u, v in states))
            if b.raw is not None and val > b.raw:
                wins += 1
                break
    ok = wins == 0
    acceptance_line("criterion 7b", ok, f"{n} pencils, {len(grid)} grid points, {wins} grid wins")
    assert ok


# -- 8 ---------------------------------------------------------------------

def test_c08_thm46_consistency():
    certified, checks, bad = 0, 0, []
    for e in CORPUS:
        P = e.pencil()
        if P.degree < 2:
            continue
        scan = scan_members(P)
        certs = [c for c in (lct_stability_screen(P, scan), member_stability_criterion(scan)) if c is not None]
        for c in certs:
            certified += 1
            for imp in thm46_checks(P, c.verdict, scan):
                if imp.testable:
                    checks += 1
                    if imp.failed:
                        bad.append(f"{e.name} {imp.name}")
    ok = not bad and certified > 0
    acceptance_line("criterion 8", ok, f"{certified} certificates, {checks} checks, {len(bad)} violations")
    assert ok


# -- 9 ---------------------------------------------------------------------

def test_c09a_one_strictly_semistable_member():
    entries = by_suite(CORPUS, "one-sss")
    good = 0
    for e in entries:
        res = pencil_stability_search(e.pencil())
        if res.certificate.verdict == "stable" and any(c.criterion == "one-sss" and c.is_valid() for c in res.certificates):
            good += 1
    ok = len(entries) >= 3 and good == len(entries)
    acceptance_line("criterion 9a", ok, f"{good}/{len(entries)} certified stable via the one-member criterion")
    assert ok


@pytest.mark.xfail(strict=True, reason="a common boundary subgroup for two members makes every member non-stable, "
                                       "contradicting the hypothesis that the other members are stable")
def test_c09b_two_semistable_members():
    entries = by_suite(CORPUS, "two-sss")
    good = 0
    for e in entries:
        res = pencil_stability_search(e.pencil())
        if res.certificate.verdict == "strictly-semistable" and res.certificate.criterion == "two-sss":
            good += 1
    ok = len(entries) >= 3 and good == len(entries)
    acceptance_line("criterion 9b", ok, f"{good}/{len(entries)} detected strictly semistable via the two-member criterion")
    assert ok


# -- 10 --------------------------------------------------------------------

def test_c10_line_pencils():
    rng = random.Random(10)
    t0 = time.perf_counter()
    unstable = sum(pencil_stability_search(random_pencil(1, rng), positive=False).certificate.verdict == "unstable"
                   for _ in range(100))
    dt = time.perf_counter() - t0
    ok = unstable == 100 and dt < 5
    acceptance_line("criterion 10", ok, f"{unstable}/100 unstable in {dt:.2f}s")
    assert ok


# -- 11 --------------------------------------------------------------------

DRIVER = """
import json, sys
from pencilstab.cli import main
from pencilstab.corpus import load_corpus
out = sys.argv[1]
for k, e in enumerate(load_corpus()):
    path = f"{out}/{k:02d}-in.json"
    with open(path, "w") as fh:
        json.dump({"degree": e.degree, "f": e.f, "g": e.g}, fh)
    rc = main(["analyze", path, "--seed", "0", "-o", f"{out}/{k:02d}-{e.name}.json"])
    assert rc == 0, e.name
"""


def test_c11_determinism(tmp_path):
    dirs = []
    for threads in ("1", "4"):
        d = tmp_path / f"run{threads}"
        d.mkdir()
        env = dict(os.environ, PENCILSTAB_THREADS=threads)
        subprocess.run([sys.executable, "-c", DRIVER, str(d)], check=True, env=env)
        dirs.append(d)
    names = sorted(p.name for p in dirs[0].iterdir())
    same = all((dirs[0] / n).read_bytes() == (dirs[1] / n).read_bytes() for n in names)
    reports = [n for n in names if not n.endswith("-in.json")]
    ok = same and len(reports) == len(CORPUS)
    acceptance_line("criterion 11", ok, f"{len(reports)} reports byte-identical across two runs")
    assert ok
