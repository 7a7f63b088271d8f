from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from pencilstab.forms import (
    FormSyntaxError,
    HomogeneousForm,
    InhomogeneousFormError,
    Matrix3,
    ORIGIN,
    ProjectivePoint,
    change_coordinates,
    dehomogenize,
    format_form,
    multiplicity_at,
    parse_form,
    translate_to_origin,
    translation_matrix,
)

from conftest import forms, matrices, points

x, y, z = sympy.symbols("x y z")
SWAP_XY = Matrix3([[0, 1, 0], [1, 0, 0], [0, 0, 1]])


def sym(f):
    return f.to_sympy().as_expr()


def sympy_change(f, M):
    # oracle: substitute v -> M v with sympy
    sub = {v: sum(sympy.Rational(c.numerator, c.denominator) * w for c, w in zip(row, (x, y, z)))
           for v, row in zip((x, y, z), M.rows)}
    return sympy.expand(sym(f).subs(sub, simultaneous=True))


# -- parse_form ------------------------------------------------------------

def test_parse_fermat():  # [TRIVIAL]
    assert parse_form("x^3 + y^3 + z^3", 3).coeffs == {(3, 0): 1, (0, 3): 1, (0, 0): 1}


def test_parse_xyz():  # [TRIVIAL]
    assert parse_form("x*y*z", 3).coeffs == {(1, 1): 1}


def test_parse_inhomogeneous():  # [TRIVIAL]
    with pytest.raises(InhomogeneousFormError):
        parse_form("x^2 + y^3", 3)


@pytest.mark.parametrize("text", ["x^^2", "x + ", "(x+y", "x $ y", ""])
def test_parse_syntax_errors(text):
    with pytest.raises((FormSyntaxError, ValueError)):
        parse_form(text, 1)


def test_parse_zero_rejected():
    with pytest.raises(ValueError):
        parse_form("x*y - y*x", 2)


def test_parse_rational_and_products():
    f = parse_form("(x - 2*z)^2/3 + 1/2*y*z", 2)
    assert f.coeffs == {(2, 0): Fraction(1, 3), (1, 0): Fraction(-4, 3), (0, 0): Fraction(4, 3), (0, 1): Fraction(1, 2)}


def test_wrong_degree():
    with pytest.raises(InhomogeneousFormError):
        parse_form("x^2", 3)


@given(forms(max_degree=5))
def test_format_parse_roundtrip(f):
    assert parse_form(format_form(f), f.degree) == f


def test_sparse_canonical():
    f = HomogeneousForm(2, {(2, 0): 1, (1, 1): 0})
    assert f.coeffs == {(2, 0): 1}
    with pytest.raises(ValueError):
        HomogeneousForm(2, {(2, 1): 1})


# -- change_coordinates ----------------------------------------------------

def test_change_identity():  # [TRIVIAL]
    f = parse_form("x^2", 2)
    assert change_coordinates(f, Matrix3.identity()) == f


def test_change_swap():  # [TRIVIAL]
    assert change_coordinates(parse_form("x^2", 2), SWAP_XY) == parse_form("y^2", 2)


def test_change_shear():  # [DERIVED: hand expansion of z -> z + x]
    M = Matrix3([[1, 0, 0], [0, 1, 0], [1, 0, 1]])
    assert change_coordinates(parse_form("x*z", 2), M) == parse_form("x^2 + x*z", 2)


def test_change_singular_rejected():
    with pytest.raises(ValueError):
        change_coordinates(parse_form("x", 1), Matrix3([[1, 0, 0], [1, 0, 0], [0, 0, 1]]))


@given(forms(max_degree=4), matrices())
def test_change_matches_sympy(f, M):  # [DERIVED: sympy substitution oracle]
    assert sym(change_coordinates(f, M)) - sympy_change(f, M) == 0


@given(forms(max_degree=4), matrices(), matrices())
def test_change_composition(f, M, N):
    assert change_coordinates(f, M @ N) == change_coordinates(change_coordinates(f, M), N)


@given(forms(max_degree=4), matrices())
def test_change_preserves_degree_and_inverts(f, M):
    g = change_coordinates(f, M)
    assert g.degree == f.degree
    assert change_coordinates(g, M.inverse()) == f


# -- translate_to_origin ---------------------------------------------------

def test_translate_identity():  # [TRIVIAL]
    f = parse_form("x^2*z - y^3", 3)
    assert translate_to_origin(f, ORIGIN) == f


def test_translate_evaluation():  # [DERIVED: evaluation check]
    f = parse_form("z^2", 2)
    p = ProjectivePoint((1, 0, 1))
    assert translate_to_origin(f, p).evaluate((0, 0, 1)) == f.evaluate((1, 0, 1))


def test_translate_line():  # [DERIVED: evaluation check]
    f = parse_form("x", 1)
    g = translate_to_origin(f, ProjectivePoint((0, 1, 0)))
    assert (g.evaluate((0, 0, 1)) == 0) == (f.evaluate((0, 1, 0)) == 0)


@given(points())
def test_translation_matrix_maps_origin(p):
    M = translation_matrix(p)
    assert M.is_invertible()
    assert ProjectivePoint(M.apply((0, 0, 1))) == p


# -- multiplicity_at -------------------------------------------------------

def test_mult_monomial():  # [TRIVIAL]
    assert multiplicity_at(parse_form("x^3", 3), ORIGIN) == 3


def test_mult_cusp():  # [TRIVIAL]
    assert multiplicity_at(parse_form("x^2*z - y^3", 3), ORIGIN) == 2


def test_mult_x3_at_010():  # [DERIVED: at (0:1:0) x^3 dehomogenizes to u^3]
    assert multiplicity_at(parse_form("x^3", 3), ProjectivePoint((0, 1, 0))) == 3


def test_mult_zero_form():
    with pytest.raises(ValueError):
        multiplicity_at(HomogeneousForm(2), ORIGIN)


@given(forms(max_degree=4), points())
def test_mult_positive_iff_vanishes(f, p):
    assert (multiplicity_at(f, p) >= 1) == (f.evaluate(p.coords) == 0)


@given(forms(max_degree=4), matrices(), points())
def test_mult_coordinate_invariance(f, M, p):
    assert multiplicity_at(change_coordinates(f, M), p) == multiplicity_at(f, ProjectivePoint(M.apply(p.coords)))


@given(forms(max_degree=4), points())
def test_mult_matches_taylor_oracle(f, p):  # [DERIVED: sympy derivatives]
    # oracle: lowest order k with some k-th partial nonzero at p
    F = sym(f)
    px = [sympy.Rational(c.numerator, c.denominator) for c in p.coords]
    k, cur = 0, [F]
    while True:
        if any(e.subs(dict(zip((x, y, z), px))) != 0 for e in cur):
            break
        cur = list({sympy.expand(sympy.diff(e, v)) for e in cur for v in (x, y, z)} - {0})
        k += 1
    assert multiplicity_at(f, p) == k


# -- dehomogenize ----------------------------------------------------------

def test_dehomogenize_examples():  # [TRIVIAL]
    assert dehomogenize(parse_form("z^4", 4)) == {(0, 0): 1}
    assert dehomogenize(parse_form("x^2*z - y^3", 3)) == {(2, 0): 1, (0, 3): -1}
    assert dehomogenize(HomogeneousForm(3)) == {}


@given(forms(max_degree=4), st.integers(-5, 5), st.integers(-5, 5))
def test_dehomogenize_evaluates(f, u, v):
    aff = dehomogenize(f)
    assert sum(c * Fraction(u) ** i * Fraction(v) ** j for (i, j), c in aff.items()) == f.evaluate((u, v, 1))


def test_projective_point_normalized():
    assert ProjectivePoint((2, 4, 2)) == ProjectivePoint((1, 2, 1))
    assert ProjectivePoint((3, 0, 0)).coords == (1, 0, 0)
    with pytest.raises(ValueError):
        ProjectivePoint((0, 0, 0))
