"""Log canonical thresholds of plane curve germs from Newton polygons.

A germ is a bivariate polynomial ``{(i, j): c}`` in local coordinates
(u, v) centred at the point.  For a germ that is nondegenerate on every
compact edge of its Newton polygon the threshold is min(1, 1/t), where (t, t)
is the point where the diagonal leaves the polygon.  Degenerate germs are
pushed through a few analytic coordinate changes first; if that fails only
bounds are reported.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from math import gcd

import sympy

from .algebra import binary_roots_poly
from .forms import HomogeneousForm, ProjectivePoint, to_fraction, translate_to_origin, translation_matrix
from .pencil import Pencil, change_pencil_coordinates
from .weights import WeightVector, affine_weight_curve

U, V = sympy.symbols("u v")

NEWTON = "newton-candidate"
WEIGHTED = "weighted-bound"
PENCIL = "pencil-bound"
ORACLE = "oracle-table"

Germ = dict  # (i, j) -> Fraction


@dataclass(frozen=True)
class Edge:
    start: tuple[int, int]  # end with the smaller u-exponent
    end: tuple[int, int]
    normal: tuple[int, int]  # primitive (w_u, w_v), both positive
    level: int  # w . start == w . end

    def points(self, germ: Germ) -> list[tuple[int, int]]:
        return sorted(p for p in germ if self.normal[0] * p[0] + self.normal[1] * p[1] == self.level)


@dataclass(frozen=True)
class NewtonPolygonLocal:
    support: frozenset
    vertices: tuple  # from the v-axis side to the u-axis side
    edges: tuple

    @property
    def u_min(self) -> int:
        return min(i for i, _ in self.support)

    @property
    def v_min(self) -> int:
        return min(j for _, j in self.support)

    def diagonal(self) -> Fraction:
        """t with (t, t) on the boundary: max of level/(w_u + w_v) over all faces."""
        t = Fraction(max(self.u_min, self.v_min))
        for e in self.edges:
            t = max(t, Fraction(e.level, e.normal[0] + e.normal[1]))
        return t


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def newton_polygon(germ: Germ) -> NewtonPolygonLocal:
    support = frozenset(p for p, c in germ.items() if c)
    if not support:
        raise ValueError("zero germ")
    # for each u keep the lowest v, then take the lower convex chain
    lowest: dict[int, int] = {}
    for i, j in support:
        lowest[i] = min(j, lowest.get(i, j))
    pts = sorted(lowest.items())
    chain: list = []
    for p in pts:
        while len(chain) >= 2 and _cross(chain[-2], chain[-1], p) <= 0:
            chain.pop()
        chain.append(p)
    # keep only the strictly decreasing part (compact faces)
    verts = [chain[0]]
    for p in chain[1:]:
        if p[1] < verts[-1][1]:
            verts.append(p)
        else:
            break
    edges = []
    for a, b in zip(verts, verts[1:]):
        du, dv = b[0] - a[0], a[1] - b[1]
        g = gcd(du, dv)
        w = (dv // g, du // g)
        edges.append(Edge(a, b, w, w[0] * a[0] + w[1] * a[1]))
    return NewtonPolygonLocal(support, tuple(verts), tuple(edges))


def edge_polynomial(germ: Germ, edge: Edge) -> list[Fraction]:
    """Coefficients c_k of H(T) = sum c_k T^k with T = v^(w_u) / u^(w_v)."""
    wu, wv = edge.normal
    i_max, j_min = edge.end
    K = (edge.end[0] - edge.start[0]) // wv
    return [to_fraction(germ.get((i_max - k * wv, j_min + k * wu), 0)) for k in range(K + 1)]


def _sym(c: Fraction):
    return sympy.Rational(c.numerator, c.denominator)


def _repeated_roots(H: list[Fraction]):
    """(squarefree?, rational repeated roots) of H."""
    T = sympy.Symbol("T")
    p = sympy.Poly([_sym(c) for c in reversed(H)], T, domain=sympy.QQ)
    if p.degree() <= 1:
        return True, []
    g = sympy.gcd(p, p.diff(T))
    if g.degree() == 0:
        return True, []
    roots = [to_fraction(-fac.all_coeffs()[1] / fac.all_coeffs()[0]) for fac, m in sympy.factor_list(g)[1] if sympy.Poly(fac, T).degree() == 1]
    return False, roots


@dataclass
class LctEstimate:
    lower: Fraction | None = None
    upper: Fraction | None = None
    exact: Fraction | None = None
    method: str = NEWTON
    nondegeneracy_checked: bool = False
    notes: list[str] = field(default_factory=list)

    def __post_init__(self):
        if self.exact is not None:
            if self.lower is not None and self.lower > self.exact:
                raise ValueError("lower bound above the exact value")
            if self.upper is not None and self.upper < self.exact:
                raise ValueError("upper bound below the exact value")

    @property
    def best_lower(self) -> Fraction | None:
        return self.exact if self.exact is not None else self.lower

    def to_json(self) -> dict:
        out = {"method": self.method, "nondegeneracy_checked": self.nondegeneracy_checked}
        for key in ("lower", "upper", "exact"):
            val = getattr(self, key)
            out[key] = None if val is None else _frac(val)
        if self.notes:
            out["notes"] = list(self.notes)
        return out


def _frac(c) -> str:
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _check_germ(germ: Germ) -> Germ:
    germ = {(int(i), int(j)): to_fraction(c) for (i, j), c in germ.items() if c}
    if not germ:
        raise ValueError("zero germ")
    if (0, 0) in germ:
        raise ValueError("the germ is a unit: the point is not on the curve")
    return germ


def germ_multiplicity(germ: Germ) -> int:
    return min(i + j for i, j in germ)


def newton_lct_candidate(germ: Germ) -> LctEstimate:
    """min(1, 1/t) with the compact-edge nondegeneracy test."""
    germ = _check_germ(germ)
    poly = newton_polygon(germ)
    cand = min(Fraction(1), 1 / poly.diagonal())
    nondeg = all(_repeated_roots(edge_polynomial(germ, e))[0] for e in poly.edges)
    if nondeg:
        return LctEstimate(cand, cand, cand, NEWTON, True)
    return LctEstimate(None, cand, None, NEWTON, False)


# ---------------------------------------------------------------------------
# Analytic and linear coordinate changes for degenerate germs


def _to_poly(germ: Germ) -> sympy.Poly:
    return sympy.Poly.from_dict({k: _sym(c) for k, c in germ.items()}, U, V, domain=sympy.QQ)


def _from_expr(expr) -> Germ:
    p = sympy.Poly(sympy.expand(expr), U, V, domain=sympy.QQ)
    return {k: to_fraction(c) for k, c in p.as_dict().items() if c}


def _fix_edge(germ: Germ, poly: NewtonPolygonLocal) -> Germ | None:
    """Remove one degenerate factor by v -> v + r u^k or u -> u + v^k / r."""
    for e in poly.edges:
        ok, roots = _repeated_roots(edge_polynomial(germ, e))
        if ok:
            continue
        wu, wv = e.normal
        for r in roots:
            expr = _to_poly(germ).as_expr()
            if wu == 1:
                return _from_expr(expr.subs(V, V + _sym(r) * U**wv))
            if wv == 1 and r != 0:
                return _from_expr(expr.subs(U, U + V**wu / _sym(r)))
        return None
    return None


def _tangent_charts(germ: Germ) -> list[Germ]:
    """The germ rewritten so each rational tangent line becomes v = 0."""
    m = germ_multiplicity(germ)
    cone = {k: c for k, c in germ.items() if k[0] + k[1] == m}
    roots = binary_roots_poly(sympy.Poly.from_dict({k: _sym(c) for k, c in cone.items()}, U, V, domain=sympy.QQ))
    out = []
    expr = _to_poly(germ).as_expr()
    for (u0, v0), mult in roots.roots:
        if mult < 2:
            continue
        # the linear factor vanishing at (u0, v0) is a u + b v with (a, b) = (v0, -u0)
        a, b = v0, -u0
        if b:
            out.append(_from_expr(expr.subs(V, (V - _sym(a) * U) / _sym(b))))
        else:
            out.append(_from_expr(expr.subs({U: V, V: U}, simultaneous=True)))
    return out


def local_lct(germ: Germ, max_steps: int = 12) -> LctEstimate:
    """Exact lct when some chart reached by the changes above is nondegenerate."""
    germ = _check_germ(germ)
    m = germ_multiplicity(germ)
    if m == 1:
        return LctEstimate(Fraction(1), Fraction(1), Fraction(1), NEWTON, True, ["smooth point"])
    upper = None
    for chart in [germ] + _tangent_charts(germ):
        current = chart
        for _ in range(max_steps):
            est = newton_lct_candidate(current)
            upper = est.upper if upper is None else min(upper, est.upper)
            if est.exact is not None:
                return LctEstimate(est.exact, est.exact, est.exact, NEWTON, True)
            nxt = _fix_edge(current, newton_polygon(current))
            if nxt is None:
                break
            current = nxt
    lower = min(Fraction(1, m), upper)
    return LctEstimate(lower, upper, None, NEWTON, False, ["degenerate in every chart tried"])


def germ_at(f: HomogeneousForm, p: ProjectivePoint) -> Germ:
    return translate_to_origin(f, p).coeffs


def lct_at_point(f: HomogeneousForm, p: ProjectivePoint) -> LctEstimate:
    germ = germ_at(f, p)
    hit = oracle_lookup(germ)
    if hit is not None:
        return LctEstimate(hit, hit, hit, ORACLE, True)
    return local_lct(germ)


# ---------------------------------------------------------------------------
# Oracle table


@dataclass(frozen=True)
class OracleRow:
    name: str
    germ: str
    lct: Fraction
    provenance: str

    def germ_map(self) -> Germ:
        return parse_germ(self.germ)


def parse_germ(text: str) -> Germ:
    """Parse a polynomial in u, v (read as x, y with z = 1)."""
    expr = sympy.sympify(text.replace("^", "**"), locals={"u": U, "v": V})
    poly = sympy.Poly(expr, U, V, domain=sympy.QQ)
    return {k: to_fraction(c) for k, c in poly.as_dict().items() if c}


def germ_to_form(germ: Germ) -> HomogeneousForm:
    """Homogenize with z to the least possible degree."""
    d = max(i + j for i, j in germ)
    return HomogeneousForm(d, germ)


@lru_cache(maxsize=None)
def load_oracle_table(path: str | None = None) -> tuple[OracleRow, ...]:
    if path is None:
        text = resources.files("pencilstab").joinpath("data/lct_oracle.json").read_text()
    else:
        with open(path) as fh:
            text = fh.read()
    data = json.loads(text)
    return tuple(OracleRow(r["name"], r["germ"], Fraction(r["lct"]), r["provenance"]) for r in data["rows"])


@lru_cache(maxsize=None)
def _oracle_index() -> dict[frozenset, Fraction]:
    return {frozenset(row.germ_map().items()): row.lct for row in load_oracle_table()}


def oracle_lookup(germ: Germ) -> Fraction | None:
    return _oracle_index().get(frozenset((k, to_fraction(c)) for k, c in germ.items() if c))


def validate_oracle_table(rows=None) -> list[tuple[OracleRow, bool, str]]:
    """Each row must be nondegenerate with Newton candidate equal to the stored value."""
    out = []
    for row in rows if rows is not None else load_oracle_table():
        est = newton_lct_candidate(row.germ_map())
        if not est.nondegeneracy_checked:
            out.append((row, False, "degenerate normal form"))
        elif est.exact != row.lct:
            out.append((row, False, f"newton gives {_frac(est.exact)}"))
        else:
            out.append((row, True, "ok"))
    return out


# ---------------------------------------------------------------------------
# Weighted multiplicity bound and the pencil bound


def weighted_mult_bound(f: HomogeneousForm, p: ProjectivePoint, lam) -> Fraction:
    """((a_x - a_z) + (a_y - a_z)) / omega(f, lambda) after moving p to (0:0:1)."""
    lam = WeightVector(*lam)
    if not lam.is_normalized() or lam.ay == lam.az:
        raise ValueError("need a normalized subgroup with a_y > a_z")
    if f.is_zero():
        raise ValueError("zero form")
    omega = affine_weight_curve(translate_to_origin(f, p), lam)
    if omega == 0:
        raise ValueError("omega(f, lambda) = 0 gives no bound")
    b1, b2 = lam.b
    return Fraction(b1 + b2, omega)


def family_weight(a) -> tuple[Fraction, Fraction, Fraction]:
    """The subgroup (1, a, -1-a) of the pencil bound, for a in (-1/2, 1]."""
    a = to_fraction(a)
    if not (Fraction(-1, 2) < a <= 1):
        raise ValueError("a must lie in the interval (-1/2, 1]")
    return (Fraction(1), a, -1 - a)


def family_ratio(states, a) -> Fraction:
    """3(1 + a) / omega(P, lambda_a) on states of a pencil with the point at (0:0:1)."""
    a = family_weight(a)[1]
    omega = min((2 + a) * u + (1 + 2 * a) * v for u, v in states)
    return 3 * (1 + a) / omega


@dataclass
class PencilLctBound:
    raw: Fraction | None  # None encodes +infinity
    capped: Fraction
    a_star: Fraction
    limit: bool  # True when the supremum is approached as a -> -1/2 from above
    states: tuple

    def to_json(self) -> dict:
        return {
            "bound": _frac(self.capped),
            "raw": "inf" if self.raw is None else _frac(self.raw),
            "a": _frac(self.a_star),
            "a_limit_from_above": self.limit,
        }


def pencil_lct_lower_bound(P: Pencil, p: ProjectivePoint) -> PencilLctBound:
    """Best value of 3(1+a)/omega(P, lambda_a) over a in (-1/2, 1].

    omega is a minimum of affine functions of a, so the ratio is monotone
    between consecutive breakpoints; only breakpoints, a = 1 and the limit
    at -1/2 need to be examined.
    """
    if P.f.evaluate(p.coords) != 0 or P.g.evaluate(p.coords) != 0:
        raise ValueError(f"{p} is not a base point")
    Q = change_pencil_coordinates(P, translation_matrix(p))
    states = tuple(sorted(Q.states()))
    lines = {(2 * u + v, u + 2 * v) for u, v in states}  # omega = alpha + beta * a
    lo, hi = Fraction(-1, 2), Fraction(1)
    candidates = {hi}
    lines_l = sorted(lines)
    for k, (a1, b1) in enumerate(lines_l):
        for a2, b2 in lines_l[k + 1:]:
            if b1 != b2:
                x = Fraction(a2 - a1, b1 - b2)
                if lo < x < hi:
                    candidates.add(x)
    best_a = max(candidates, key=lambda a: (family_ratio(states, a), -a))
    best = family_ratio(states, best_a)
    # supremum as a -> -1/2+: 3/2 divided by min(alpha - beta/2) = min(3u/2)
    low_omega = min(Fraction(3 * u, 2) for u, _ in states)
    limit = False
    raw: Fraction | None = best
    if low_omega == 0:
        raw, best_a, limit = None, lo, True
    else:
        lim = Fraction(3, 2) / low_omega
        if lim > best:
            raw, best_a, limit = lim, lo, True
    capped = Fraction(1) if raw is None else min(Fraction(1), raw)
    return PencilLctBound(raw, capped, best_a, limit, states)


# ---------------------------------------------------------------------------
# Curves


@dataclass
class CurveLct:
    estimate: LctEstimate
    points: list[tuple[ProjectivePoint, LctEstimate]]
    smooth: bool
    reduced: bool
    complete: bool  # every singular point was rational and analysed


@lru_cache(maxsize=1024)
def curve_lct(f: HomogeneousForm) -> CurveLct:
    """Global lct(P^2, C) = min over points, capped at 1 (cached; do not mutate)."""
    from .algebra import factor_form, rational_common_zeros

    if f.degree == 0 or f.is_zero():
        raise ValueError("need a curve")
    mults = [m for _, m in factor_form(f)]
    reduced = max(mults) == 1
    if not reduced:
        c = max(mults)
        up = Fraction(1, c)
        low = Fraction(1, f.degree)
        return CurveLct(LctEstimate(low, up, None, NEWTON, False, [f"component of multiplicity {c}"]), [], False, False, False)
    zs = rational_common_zeros(list(f.gradient()))
    if not zs.points and zs.residual_degree == 0:
        one = Fraction(1)
        return CurveLct(LctEstimate(one, one, one, NEWTON, True, ["smooth curve"]), [], True, True, True)
    per = [(p, lct_at_point(f, p)) for p in zs.points]
    complete = zs.residual_degree == 0
    exacts = [e.exact for _, e in per]
    uppers = [e.upper for _, e in per if e.upper is not None]
    lowers = [e.best_lower for _, e in per]
    upper = min(uppers + [Fraction(1)])
    if complete and all(x is not None for x in exacts):
        val = min(exacts + [Fraction(1)])
        est = LctEstimate(val, upper, val, NEWTON, True)
    elif complete:
        est = LctEstimate(min(lowers + [Fraction(1)]), upper, None, NEWTON, False, ["a singular point is degenerate"])
    else:
        est = LctEstimate(Fraction(1, f.degree), upper, None, NEWTON, False, ["irrational singular points"])
    return CurveLct(est, per, False, True, complete)
