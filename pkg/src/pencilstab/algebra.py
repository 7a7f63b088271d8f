"""Elimination helpers over Q: gcds, resultants, binary-form roots and
rational common zeros of ternary forms.

Factorization, gcd and subresultant computations are delegated to sympy;
everything that leaves this module is a ``Fraction``/``HomogeneousForm``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache
from fractions import Fraction

import sympy

from .forms import HomogeneousForm, Matrix3, ProjectivePoint, X, Y, Z, change_coordinates, to_fraction

S_, T_ = sympy.symbols("s t")

# Deterministic shears tried in order when (0:0:1) must avoid a locus.
SHEAR_OFFSETS = [(0, 0), (1, 0), (0, 1), (1, 1), (2, 1), (1, 2), (-1, 1), (3, -2), (2, 5), (-4, 3), (5, 7), (7, -3)]


def shear(a, b) -> Matrix3:
    """Matrix sending (0:0:1) to (a:b:1) and fixing x, y."""
    return Matrix3([[1, 0, a], [0, 1, b], [0, 0, 1]])


def form_gcd(forms) -> HomogeneousForm:
    """Primitive gcd of nonzero ternary forms (a nonzero constant means coprime)."""
    forms = [f for f in forms if f]
    if not forms:
        raise ValueError("gcd of zero forms")
    g = forms[0].to_sympy()
    for f in forms[1:]:
        g = g.gcd(f.to_sympy())
        if g.total_degree() == 0:
            return HomogeneousForm(0, {(0, 0): 1})
    return HomogeneousForm.from_sympy(g, g.total_degree()).primitive()


def exact_quotient(f: HomogeneousForm, h: HomogeneousForm) -> HomogeneousForm:
    q, r = sympy.div(f.to_sympy(), h.to_sympy())
    if not r.is_zero:
        raise ValueError("division is not exact")
    return HomogeneousForm.from_sympy(q, f.degree - h.degree)


def factor_form(f: HomogeneousForm) -> list[tuple[HomogeneousForm, int]]:
    """Irreducible factors over Q with multiplicities (constant dropped)."""
    _, facs = sympy.factor_list(f.to_sympy())
    out = []
    for poly, mult in facs:
        poly = sympy.Poly(poly, X, Y, Z, domain=sympy.QQ)
        deg = poly.total_degree()
        if deg:
            out.append((HomogeneousForm.from_sympy(poly, deg).primitive(), mult))
    out.sort(key=lambda fm: (fm[0].degree, str(fm[0])))
    return out


def linear_factors(f: HomogeneousForm) -> list[tuple[HomogeneousForm, int]]:
    return [(h, m) for h, m in factor_form(f) if h.degree == 1]


# ---------------------------------------------------------------------------
# Binary forms: {k: coeff} for s^k t^(n-k)

@dataclass
class BinaryRoots:
    roots: list[tuple[tuple[Fraction, Fraction], int]]
    irrational_degree: int


def _binary_poly(coeffs: dict[int, Fraction], n: int) -> sympy.Poly:
    terms = {(k, n - k): sympy.Rational(c.numerator, c.denominator) for k, c in coeffs.items() if c}
    if not terms:
        return sympy.Poly(0, S_, T_, domain=sympy.QQ)
    return sympy.Poly.from_dict(terms, S_, T_, domain=sympy.QQ)


def binary_roots_poly(poly: sympy.Poly) -> BinaryRoots:
    """Rational roots (s0:t0) of a nonzero homogeneous Poly in (s, t)."""
    if poly.is_zero:
        raise ValueError("zero binary form has every point as a root")
    _, facs = sympy.factor_list(poly)
    roots = []
    irr = 0
    for fac, mult in facs:
        fac = sympy.Poly(fac, *poly.gens, domain=sympy.QQ)
        deg = fac.total_degree()
        if deg == 0:
            continue
        if deg == 1:
            a = to_fraction(fac.coeff_monomial(poly.gens[0]))
            b = to_fraction(fac.coeff_monomial(poly.gens[1]))
            roots.append(((-b, a), mult))
        else:
            irr += deg * mult
    roots.sort(key=lambda r: _proj_key(r[0]))
    return BinaryRoots(roots, irr)


def _proj_key(pt):
    s, t = pt
    if t:
        return (0, s / t)
    return (1, Fraction(0))


def binary_roots(coeffs: dict[int, Fraction], n: int) -> BinaryRoots:
    return binary_roots_poly(_binary_poly(coeffs, n))


def _substitute(f: HomogeneousForm, cols) -> sympy.Poly:
    """f(s*p + t*q) as a homogeneous Poly in (s, t), for cols = (p, q)."""
    p, q = cols
    expr = f.to_sympy().as_expr()
    sub = {
        X: _sym(p[0]) * S_ + _sym(q[0]) * T_,
        Y: _sym(p[1]) * S_ + _sym(q[1]) * T_,
        Z: _sym(p[2]) * S_ + _sym(q[2]) * T_,
    }
    return sympy.Poly(sympy.expand(expr.subs(sub, simultaneous=True)), S_, T_, domain=sympy.QQ)


def _sym(c) -> sympy.Rational:
    c = to_fraction(c)
    return sympy.Rational(c.numerator, c.denominator)


def restrict_to_line(f: HomogeneousForm, p, q) -> sympy.Poly:
    """The binary form f(s p + t q) on the line through p and q."""
    return _substitute(f, (p, q))


def resultant_z(a: HomogeneousForm, b: HomogeneousForm) -> sympy.Poly:
    """Res_z(a, b) as a binary form in (x, y)."""
    pa = sympy.Poly(a.to_sympy().as_expr(), Z, X, Y, domain=sympy.QQ)
    pb = sympy.Poly(b.to_sympy().as_expr(), Z, X, Y, domain=sympy.QQ)
    r = pa.resultant(pb)
    if not isinstance(r, sympy.Poly):
        r = sympy.Poly(r, X, Y, domain=sympy.QQ)
    return r


# ---------------------------------------------------------------------------
# Rational common zeros

@dataclass
class ZeroSet:
    """Rational points of V(forms) plus bookkeeping on what was not found.

    ``residual_degree`` counts zeros (over an algebraic closure) that are not
    rational, or candidate lines that could not be resolved; zero means the
    rational list is the complete zero set.  ``component`` is the common
    curve component when the zero set is not finite.
    """

    points: list[ProjectivePoint]
    residual_degree: int = 0
    component: HomogeneousForm | None = None
    notes: list[str] = field(default_factory=list)

    @property
    def finite(self) -> bool:
        return self.component is None

    @property
    def complete(self) -> bool:
        return self.finite and self.residual_degree == 0


def _combination(forms, rng):
    out = forms[0]
    for f in forms[1:]:
        out = out + f.scale(rng.randint(-7, 7))
    return out


def _pick_coprime_pair(forms, rng):
    if len(forms) == 2 and form_gcd(forms).degree == 0:
        return forms[0], forms[1], None
    for _ in range(40):
        a = _combination(forms, rng)
        b = _combination(list(reversed(forms)), rng)
        if a and b and form_gcd([a, b]).degree == 0:
            c = _combination(forms[1:] + forms[:1], rng) if len(forms) > 2 else None
            return a, b, c
    raise RuntimeError("could not find a coprime pair of combinations")


def rational_common_zeros(forms, seed: int = 0) -> ZeroSet:
    """Rational points where every given form vanishes.

    The forms must share one degree.  Points are returned normalized and
    sorted; see ``ZeroSet`` for the completeness flags.  Results are cached
    and shared, so callers must not mutate them.
    """
    return _common_zeros(tuple(forms), seed)


@lru_cache(maxsize=4096)
def _common_zeros(forms: tuple, seed: int) -> ZeroSet:
    forms = [f for f in forms if f]
    if not forms:
        raise ValueError("every point is a zero of the zero form")
    if any(f.degree == 0 for f in forms):
        return ZeroSet([])
    if len({f.degree for f in forms}) != 1:
        raise ValueError("forms must share one degree")
    h = form_gcd(forms)
    if h.degree:
        rest = [exact_quotient(f, h) for f in forms]
        inner = _common_zeros(tuple(rest), seed) if all(r.degree for r in rest) else ZeroSet([])
        return ZeroSet(inner.points, inner.residual_degree, h, inner.notes + ["common component present"])
    rng = random.Random(seed)
    a, b, c = _pick_coprime_pair(forms, rng)

    for off in SHEAR_OFFSETS:
        if a.evaluate((off[0], off[1], 1)) != 0:
            S = shear(*off)
            break
    else:  # pragma: no cover - a nonzero form cannot vanish on all offsets for small degree
        raise RuntimeError("no admissible shear")

    a2, b2 = change_coordinates(a, S), change_coordinates(b, S)
    shifted = [change_coordinates(f, S) for f in forms]
    res = resultant_z(a2, b2)
    if c is not None:
        res = res.gcd(resultant_z(a2, change_coordinates(c, S)))
    if res.is_zero:
        raise RuntimeError("resultant vanished identically for coprime forms")
    res = sympy.Poly(res.as_expr(), X, Y, domain=sympy.QQ)
    residual = 0
    points: set[ProjectivePoint] = set()
    if res.total_degree() > 0:
        line_roots = binary_roots_poly(res)
        residual += line_roots.irrational_degree
        for (x0, y0), _mult in line_roots.roots:
            direction = (x0, y0, Fraction(0))
            origin = (Fraction(0), Fraction(0), Fraction(1))
            g = None
            for f in shifted:
                r = restrict_to_line(f, direction, origin)
                g = r if g is None else g.gcd(r)
            if g.is_zero:
                raise RuntimeError("a whole line lies in the zero set of coprime forms")
            if g.total_degree() == 0:
                continue
            on_line = binary_roots_poly(g)
            residual += on_line.irrational_degree
            for (s0, t0), _m in on_line.roots:
                local = (s0 * x0, s0 * y0, t0)
                points.add(ProjectivePoint(S.apply(local)))
    pts = sorted(points, key=lambda p: p.sort_key())
    return ZeroSet(pts, residual)
