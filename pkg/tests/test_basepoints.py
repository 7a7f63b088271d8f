from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings

from pencilstab.basepoints import (
    MULT_LAMBDA,
    InfiniteBaseLocusError,
    base_points,
    best_generator_pair,
    multiplicity_criterion,
)
from pencilstab.forms import ORIGIN, ProjectivePoint, multiplicity_at, translate_to_origin
from pencilstab.pencil import Pencil, change_pencil_coordinates
from pencilstab.search import flag_candidates, pencil_stability_search
from pencilstab.weights import affine_weight_curve, affine_weight_pencil

from conftest import forms, matrices, pencils, points

x, y, z = sympy.symbols("x y z")


def P(f, g, d):
    return Pencil.from_strings(f, g, d)


def sympy_rational_base_points(pen):
    # oracle: solve both affine charts z = 1 and (z = 0, y = 1), plus (1:0:0)
    F, G = pen.f.to_sympy().as_expr(), pen.g.to_sympy().as_expr()
    out = set()
    for sol in sympy.solve([F.subs(z, 1), G.subs(z, 1)], [x, y], dict=True):
        if all(v.is_rational for v in sol.values()) and len(sol) == 2:
            out.add(ProjectivePoint((Fraction(str(sol[x])), Fraction(str(sol[y])), 1)))
    for sol in sympy.solve([F.subs({z: 0, y: 1}), G.subs({z: 0, y: 1})], [x], dict=True):
        if sol and sol[x].is_rational:
            out.add(ProjectivePoint((Fraction(str(sol[x])), 1, 0)))
    if F.subs({x: 1, y: 0, z: 0}) == 0 and G.subs({x: 1, y: 0, z: 0}) == 0:
        out.add(ProjectivePoint((1, 0, 0)))
    return out


def test_x3_y3():  # [TRIVIAL]
    rep = base_points(P("x^3", "y^3", 3))
    assert rep.rational_points == [(ORIGIN, 3, 3)]
    assert rep.irrational_residual_degree == 0 and rep.finite


def test_conic_pair():  # [DERIVED: hand solve of the system]
    rep = base_points(P("x^2 - y*z", "x*y", 2))
    pts = {p: (mf, mg) for p, mf, mg in rep.rational_points}
    assert set(pts) == {ProjectivePoint((0, 1, 0)), ORIGIN}
    assert pts[ORIGIN] == (1, 2) and pts[ProjectivePoint((0, 1, 0))] == (1, 1)


def test_conjugate_base_points():  # [DERIVED: resultant factorization]
    rep = base_points(P("x^2 + y^2", "z^2 - x*y", 2))
    assert rep.rational_points == []
    assert rep.irrational_residual_degree > 0 and rep.notes


def test_infinite_base_locus():
    with pytest.raises(InfiniteBaseLocusError):
        base_points(P("x*y", "x*z", 2))


@settings(max_examples=30)
@given(pencils(max_degree=3))
def test_base_points_match_sympy(pen):  # [DERIVED: sympy polynomial system solve]
    try:
        rep = base_points(pen)
    except InfiniteBaseLocusError:
        return
    for p, mf, mg in rep.rational_points:
        assert pen.f.evaluate(p.coords) == 0 == pen.g.evaluate(p.coords)
        assert (mf, mg) == (multiplicity_at(pen.f, p), multiplicity_at(pen.g, p))
    assert set(rep.points()) == sympy_rational_base_points(pen)


@settings(max_examples=30)
@given(pencils(max_degree=3), matrices())
def test_base_points_equivariant(pen, M):
    try:
        before = set(base_points(pen).points())
    except InfiniteBaseLocusError:
        return
    after = base_points(change_pencil_coordinates(pen, M)).points()
    assert {ProjectivePoint(M.apply(q.coords)) for q in after} == before


@given(forms(max_degree=5), points())
def test_omega_is_three_times_multiplicity(f, p):
    assert affine_weight_curve(translate_to_origin(f, p), MULT_LAMBDA) == 3 * multiplicity_at(f, p)


# -- multiplicity criterion ------------------------------------------------

def test_mult_x3_y3():  # [DERIVED: both routes by hand]
    pen = P("x^3", "y^3", 3)
    c = multiplicity_criterion(pen)
    assert c.verdict == "unstable" and c.lam == (1, 1, -2)
    assert affine_weight_pencil(change_pencil_coordinates(pen, c.flag), c.lam) == 18
    entry = next(e for e in c.audit if e["kind"] == "pencil-weight")
    assert entry["omega"] == 18 and entry["threshold"] == "12"
    assert c.is_valid()


def test_mult_boundary():  # [DERIVED: multiplicity evaluation + weight audit]
    c = multiplicity_criterion(P("x^2*z + y^3", "x*y*z", 3))
    assert c.verdict == "not-stable" and c.is_valid()


def test_mult_transverse_none():  # [TRIVIAL]
    assert multiplicity_criterion(P("x^3 + y^3 + z^3", "x^2*y + y^2*z + 2*z^2*x", 3)) is None


def test_best_pair_reported():
    pen = P("x^2*z + y^3", "x^2*z + x*y*z", 3)
    bp = best_generator_pair(pen, ProjectivePoint((1, 0, 0)))
    assert bp.mult_sum == 3 and multiplicity_at(bp.second, ProjectivePoint((1, 0, 0))) == 2


def test_strict_firing_agrees_with_search(corpus):
    for e in corpus:
        if e.suite != "multiplicity":
            continue
        pen = e.pencil()
        c = multiplicity_criterion(pen)
        assert c is not None
        if c.verdict == "unstable":
            assert c.flag in flag_candidates(pen).matrices
            res = pencil_stability_search(pen, positive=False)
            assert res.certificate.verdict == "unstable"
