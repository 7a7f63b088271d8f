from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from pencilstab.curves import curve_stability_status
from pencilstab.discriminant import pencil_discriminant
from pencilstab.forms import parse_form
from pencilstab.members import (
    lct_stability_screen,
    member_stability_criterion,
    one_sss_criterion,
    scan_members,
)
from pencilstab.pencil import Pencil, member

from conftest import pencils

x, y, z = sympy.symbols("x y z")
HESSE = Pencil.from_strings("x^3 + y^3 + z^3", "x*y*z", 3)


def smooth_oracle(f) -> bool:
    # the partials have only the trivial common zero iff the ideal is zero-dimensional
    F = f.to_sympy().as_expr()
    return sympy.groebner([sympy.diff(F, v) for v in (x, y, z)], x, y, z, order="grevlex").is_zero_dimensional


def test_hesse_discriminant():  # [DERIVED: the four triangles of the Hesse pencil]
    disc = pencil_discriminant(HESSE)
    assert disc.degree == 12 == disc.expected_degree
    assert disc.order_at(0) == 3
    assert disc.order_at(Fraction(-1, 3)) == 3
    sp = disc.special_members()
    assert [(s, m) for s, m in sp.rational] == [(Fraction(-1, 3), 3), (0, 3)]
    assert [(p.degree(), m) for p, m in sp.irrational] == [(2, 3)]


def test_discriminant_identically_zero():
    # both generators are singular at (1:0:0), so every member is
    disc = pencil_discriminant(Pencil.from_strings("y^2*z + y^3", "y*z^2 + z^3", 3))
    assert disc.is_zero
    scan = scan_members(Pencil.from_strings("y^2*z + y^3", "y*z^2 + z^3", 3))
    assert not scan.complete and scan.general_status == "inconclusive"


@settings(max_examples=25)
@given(pencils(degree=2), st.fractions(min_value=-5, max_value=5, max_denominator=3))
def test_discriminant_matches_smoothness_conics(pen, s):  # [DERIVED: Groebner smoothness oracle]
    disc = pencil_discriminant(pen)
    if disc.is_zero:
        assert not smooth_oracle(member(pen, s))
        return
    assert (disc.order_at(s) > 0) == (not smooth_oracle(member(pen, s)))


@settings(max_examples=15)
@given(pencils(degree=3))
def test_discriminant_roots_are_singular(pen):  # [DERIVED: Groebner smoothness oracle]
    disc = pencil_discriminant(pen)
    if disc.is_zero:
        return
    sp = disc.special_members()
    for s, _ in sp.rational:
        assert not smooth_oracle(member(pen, s))
    for s in (2, Fraction(-7, 5)):
        if disc.order_at(s) == 0:
            assert smooth_oracle(member(pen, s))


def test_discriminant_seed_independent():
    pen = Pencil.from_strings("x^3 + 2*y^2*z - z^3", "x*y*z + y^3", 3)
    assert pencil_discriminant(pen, 0).poly().monic() == pencil_discriminant(pen, 5).poly().monic()


# -- curve statuses --------------------------------------------------------

def test_curve_status_examples():
    assert curve_stability_status(parse_form("x^3 + y^3 + z^3", 3)).verdict == "stable"  # [DERIVED: smooth]
    assert curve_stability_status(parse_form("x*y*z", 3)).verdict in ("strictly-semistable", "not-stable")
    assert curve_stability_status(parse_form("x^3 + x^2*z", 3)).verdict == "unstable"
    assert curve_stability_status(parse_form("x^2*z - y^3", 3)).verdict == "unstable"  # cuspidal cubic
    # a nodal cubic degenerates to a triangle: strictly semistable
    assert curve_stability_status(parse_form("x^2*z + y^2*z + y^3", 3)).verdict == "strictly-semistable"


def test_curve_status_quartic_tacnode():
    # a tacnode has lct 3/4 = 3/d on a quartic: semistable, not stable
    st_ = curve_stability_status(parse_form("(y*z - x^2)^2 - x^4 + y^4", 4))
    assert st_.verdict == "strictly-semistable"
    assert st_.witness is not None


# -- member criteria -------------------------------------------------------

def test_hesse_scan_inconclusive():
    scan = scan_members(HESSE)
    assert not scan.complete
    assert member_stability_criterion(scan) is None
    assert one_sss_criterion(scan) is None


def test_generic_cubic_pencil_semistable():
    # nodal members have lct 1 = 3/d, so the lct screen gives semistable only
    pen = Pencil.from_strings("x^3 + y^3 + z^3", "x^2*y + 2*y^2*z - z^3 + x*z^2", 3)
    cert = lct_stability_screen(pen)
    assert cert is not None and cert.verdict == "semistable" and cert.is_valid()


def test_lct_screen_x3_y3():  # [DERIVED: triple-line lct 1/3]
    assert lct_stability_screen(Pencil.from_strings("x^3", "y^3", 3)) is None


def test_cusp_quartic_stable(corpus):  # [DERIVED: cusp 5/6 > 3/4]
    e = next(e for e in corpus if e.name == "cusp-quartic-a")
    cert = lct_stability_screen(e.pencil())
    assert cert.verdict == "stable" and cert.is_valid()
