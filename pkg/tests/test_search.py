from fractions import Fraction

import pytest

from pencilstab.certificate import StabilityCertificate
from pencilstab.consistency import prop41_checks, thm45_consistency
from pencilstab.curves import InternalConsistencyError
from pencilstab.forms import ORIGIN, Matrix3, ProjectivePoint, translation_matrix
from pencilstab.members import scan_members
from pencilstab.pencil import Pencil
from pencilstab.search import combine, flag_candidates, pencil_stability_search, torus_search

HESSE = Pencil.from_strings("x^3 + y^3 + z^3", "x*y*z", 3)


def P(f, g, d):
    return Pencil.from_strings(f, g, d)


def test_flags_x3_y3():  # [TRIVIAL]
    fc = flag_candidates(P("x^3", "y^3", 3))
    assert fc.matrices[0] == Matrix3.identity()
    assert translation_matrix(ORIGIN) in fc.matrices
    assert not fc.degraded


def test_flags_hesse_base_points():  # [DERIVED: base-point solve]
    fc = flag_candidates(HESSE)
    for p in [(0, 1, -1), (1, 0, -1), (1, -1, 0)]:
        assert translation_matrix(ProjectivePoint(p)) in fc.matrices


def test_flags_degraded_without_rational_base_point():  # [TRIVIAL]
    fc = flag_candidates(P("x^2 + y^2", "z^2 - x*y", 2), random_flags=3)
    assert fc.degraded
    assert fc.matrices[0] == Matrix3.identity()


def test_flags_deterministic_and_unique():
    a = flag_candidates(HESSE, seed=3).matrices
    assert a == flag_candidates(HESSE, seed=3).matrices
    assert len(set(a)) == len(a)


def test_first_witness_independent_of_threads(monkeypatch):
    pen = P("x^4 + z^4 + x^2*y*z", "x^3*y + y*z^3 + x^2*z^2", 4)
    flags = flag_candidates(pen).matrices
    monkeypatch.setenv("PENCILSTAB_THREADS", "1")
    one = torus_search(pen, flags)
    monkeypatch.setenv("PENCILSTAB_THREADS", "6")
    many = torus_search(pen, flags)
    assert one == many


def test_combine_rules():
    pen = P("x^3", "y^3", 3)
    unstable = StabilityCertificate("unstable", "torus-search", pen)
    stable = StabilityCertificate("stable", "member-stability", pen)
    semi = StabilityCertificate("semistable", "lct", pen)
    notst = StabilityCertificate("not-stable", "torus-search", pen)
    with pytest.raises(InternalConsistencyError):
        combine([unstable, stable], pen)
    with pytest.raises(InternalConsistencyError):
        combine([notst, stable], pen)
    assert combine([notst, semi], pen).verdict == "strictly-semistable"
    assert combine([], pen).verdict == "inconclusive"
    assert combine([semi, stable], pen).verdict == "stable"


def test_one_sss_corpus(corpus):
    for e in corpus:
        if e.suite == "one-sss":
            res = pencil_stability_search(e.pencil())
            assert res.certificate.verdict == "stable"
            assert any(c.criterion == "one-sss" and c.is_valid() for c in res.certificates)


def test_hesse_inconclusive():
    res = pencil_stability_search(HESSE)
    assert res.certificate.verdict == "inconclusive"


# -- lct consistency checks ------------------------------------------------

def test_prop41_counterexample():
    # the pencil bound at a = 1 exceeds the lct of the triple-line member
    pen = P("x^3", "y^2*z", 3)
    checks = [c for c in prop41_checks(pen, scan_members(pen)) if c.testable]
    assert any(c.failed for c in checks)


def test_prop41_holds_x3_y3():
    pen = P("x^3", "y^3", 3)
    assert not any(c.failed for c in prop41_checks(pen, scan_members(pen)))


def test_thm45_vacuous_and_thm46():
    pen = P("x^3", "y^3", 3)
    cert = pencil_stability_search(pen).certificate
    checks = thm45_consistency(pen, cert, scan_members(pen))
    assert checks and not any(c.failed for c in checks)
