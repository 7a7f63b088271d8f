"""One-parameter subgroups, affine weights and the exact torus decision.

For a diagonal subgroup with weights (a_x, a_y, a_z) put b1 = a_x - a_z and
b2 = a_y - a_z.  A state (u, v) (exponent pair of a curve, or summed pair
(i+k, j+l) of a Plücker minor) has affine weight b1*u + b2*v, and the
object is destabilized when the minimum of these exceeds (D/3)(b1 + b2),
with D = d for curves and D = 2d for pencils.  Multiplying by 3 keeps
everything integral: the test is  3*omega > D*(b1 + b2).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from .forms import HomogeneousForm, monomial_key
from .pencil import Pencil, plucker_minors

STABLE = "stable"
STRICTLY_SEMISTABLE = "strictly-semistable"
UNSTABLE = "unstable"


class WeightVector(tuple):
    """Integer weights (a_x, a_y, a_z) with zero sum, stored in lowest terms."""

    __slots__ = ()

    def __new__(cls, ax, ay, az=None):
        if az is None:
            az = -ax - ay
        vals = [int(ax), int(ay), int(az)]
        if any(v != w for v, w in zip(vals, (ax, ay, az))):
            raise ValueError("weights must be integers")
        if sum(vals) != 0:
            raise ValueError("weights must sum to zero")
        if vals == [0, 0, 0]:
            raise ValueError("the trivial subgroup has no weight")
        c = gcd(*vals)
        return super().__new__(cls, tuple(v // c for v in vals))

    @classmethod
    def from_b(cls, b1, b2) -> "WeightVector":
        """The subgroup with a_x - a_z = b1, a_y - a_z = b2 (up to positive scale)."""
        b1, b2 = Fraction(b1), Fraction(b2)
        den = b1.denominator * b2.denominator // gcd(b1.denominator, b2.denominator)
        b1, b2 = int(b1 * den), int(b2 * den)
        return cls(2 * b1 - b2, 2 * b2 - b1, -b1 - b2)

    @classmethod
    def parse(cls, text: str) -> "WeightVector":
        parts = [p for p in text.replace(" ", "").split(",") if p]
        if len(parts) != 3:
            raise ValueError("expected three comma-separated integers")
        return cls(*(int(p) for p in parts))

    @property
    def ax(self):
        return self[0]

    @property
    def ay(self):
        return self[1]

    @property
    def az(self):
        return self[2]

    @property
    def b(self) -> tuple[int, int]:
        return (self[0] - self[2], self[1] - self[2])

    def is_normalized(self) -> bool:
        return self[0] >= self[1] >= self[2] and self[0] > 0

    def __repr__(self):
        return f"WeightVector({self[0]}, {self[1]}, {self[2]})"


def _b(lam: Sequence[int]) -> tuple[int, int]:
    ax, ay, az = lam
    return (ax - az, ay - az)


def weight_of_states(states: Iterable[tuple[int, int]], lam: Sequence[int]) -> int:
    b1, b2 = _b(lam)
    return min(b1 * u + b2 * v for u, v in states)


def affine_weight_curve(f: HomogeneousForm, lam: Sequence[int]) -> int:
    """min (a_x - a_z) i + (a_y - a_z) j over the support of f."""
    if f.is_zero():
        raise ValueError("the zero form has no weight")
    return weight_of_states(f._coeffs, lam)


def affine_weight_pencil(P: Pencil, lam: Sequence[int]) -> int:
    """The same minimum taken over the states of the nonzero Plücker minors."""
    return weight_of_states(P.states(), lam)


def threshold_margin(omega: int, lam: Sequence[int], D: int) -> int:
    """3*omega - D*(b1 + b2); positive means destabilizing, zero means boundary."""
    b1, b2 = _b(lam)
    return 3 * omega - D * (b1 + b2)


# ---------------------------------------------------------------------------
# State sets and the torus decision


@dataclass(frozen=True)
class StateSet:
    states: frozenset
    degree: int
    kind: str  # "curve" or "pencil"

    def __post_init__(self):
        if not self.states:
            raise ValueError("empty state set")
        if self.kind not in ("curve", "pencil"):
            raise ValueError(f"unknown kind {self.kind!r}")
        D = self.D
        for u, v in self.states:
            if u < 0 or v < 0 or u + v > D:
                raise ValueError(f"state {(u, v)} outside the triangle of size {D}")

    @property
    def D(self) -> int:
        return self.degree if self.kind == "curve" else 2 * self.degree

    @classmethod
    def of_curve(cls, f: HomogeneousForm) -> "StateSet":
        return cls(frozenset(f._coeffs), f.degree, "curve")

    @classmethod
    def of_pencil(cls, P: Pencil) -> "StateSet":
        return cls(frozenset(P.states()), P.degree, "pencil")

    def projected(self) -> list[tuple[int, int]]:
        """States as integer points (3u - D, 3v - D); the origin is the barycentre."""
        D = self.D
        return sorted({(3 * u - D, 3 * v - D) for u, v in self.states})

    def margin(self, lam: Sequence[int]) -> int:
        return threshold_margin(weight_of_states(self.states, lam), lam, self.D)


@dataclass(frozen=True)
class TorusVerdict:
    status: str
    witness: WeightVector | None
    margin: int | None = None

    def __post_init__(self):
        if self.status not in (STABLE, STRICTLY_SEMISTABLE, UNSTABLE):
            raise ValueError(self.status)
        if (self.witness is None) != (self.status == STABLE):
            raise ValueError("a witness is required exactly when the status is not stable")


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def convex_hull(points: Sequence[tuple[int, int]]) -> list[tuple[int, int]]:
    """Counter-clockwise hull vertices (monotone chain, collinear points dropped)."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts
    lower: list = []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list = []
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def _closest_on_segment(a, b) -> tuple[Fraction, Fraction]:
    """Point of segment [a, b] nearest to the origin."""
    dx, dy = b[0] - a[0], b[1] - a[1]
    den = dx * dx + dy * dy
    if den == 0:
        return (Fraction(a[0]), Fraction(a[1]))
    t = Fraction(-(a[0] * dx + a[1] * dy), den)
    t = min(max(t, Fraction(0)), Fraction(1))
    return (a[0] + t * dx, a[1] + t * dy)


def _witness(S: StateSet, b, strict: bool) -> TorusVerdict:
    lam = WeightVector.from_b(*b)
    m = S.margin(lam)
    if m < 0 or (strict and m == 0):
        raise AssertionError(f"torus witness {lam} fails its own inequality (margin {m})")
    return TorusVerdict(UNSTABLE if m > 0 else STRICTLY_SEMISTABLE, lam, m)


def torus_decide(S: StateSet) -> TorusVerdict:
    """Decide whether some diagonal subgroup has all weights positive (or >= 0).

    The origin lies outside the hull of the projected states exactly when a
    strictly separating functional exists; the nearest hull point is one.
    On the boundary, the supporting line's inner normal is a weak witness.
    """
    Q = S.projected()
    hull = convex_hull(Q)
    if len(hull) == 1:
        q = hull[0]
        if q == (0, 0):
            return _witness(S, (1, 1), strict=False)
        return _witness(S, q, strict=True)
    if len(hull) == 2:
        a, c = hull
        near = _closest_on_segment(a, c)
        if near != (0, 0):
            return _witness(S, near, strict=True)
        # origin on the segment: both normals are weak witnesses
        dx, dy = c[0] - a[0], c[1] - a[1]
        n1, n2 = (-dy, dx), (dy, -dx)
        return _witness(S, max(n1, n2), strict=False)
    # proper polygon, counter-clockwise
    inside = True
    boundary_edge = None
    n = len(hull)
    for k in range(n):
        a, c = hull[k], hull[(k + 1) % n]
        side = _cross(a, c, (0, 0))
        if side < 0:
            inside = False
        elif side == 0 and _between(a, c):
            boundary_edge = (a, c)
    if inside and boundary_edge is None:
        return TorusVerdict(STABLE, None)
    if inside:
        a, c = boundary_edge
        # inward normal of a counter-clockwise edge
        return _witness(S, (-(c[1] - a[1]), c[0] - a[0]), strict=False)
    best = None
    for k in range(n):
        p = _closest_on_segment(hull[k], hull[(k + 1) % n])
        d2 = p[0] * p[0] + p[1] * p[1]
        if best is None or (d2, p) < best[0]:
            best = ((d2, p), p)
    return _witness(S, best[1], strict=True)


def _between(a, c) -> bool:
    return min(a[0], c[0]) <= 0 <= max(a[0], c[0]) and min(a[1], c[1]) <= 0 <= max(a[1], c[1])


def torus_decide_pencil(P: Pencil) -> TorusVerdict:
    return torus_decide(StateSet.of_pencil(P))


def torus_decide_curve(f: HomogeneousForm) -> TorusVerdict:
    return torus_decide(StateSet.of_curve(f))


def brute_force_torus(S: StateSet, bound: int) -> str:
    """Reference decision by trying every integer subgroup with entries <= bound."""
    weak = False
    for ax, ay in itertools.product(range(-bound, bound + 1), repeat=2):
        az = -ax - ay
        if (ax, ay) == (0, 0) or abs(az) > bound:
            continue
        m = S.margin((ax, ay, az))
        if m > 0:
            return UNSTABLE
        if m == 0:
            weak = True
    return STRICTLY_SEMISTABLE if weak else STABLE


# ---------------------------------------------------------------------------
# Weight inequalities for members of a pencil


@dataclass(frozen=True)
class WeightAudit:
    omega_f: int
    omega_g: int
    omega_P: int

    @property
    def sum_bound_holds(self) -> bool:
        """omega(f) + omega(g) <= omega(P)."""
        return self.omega_f + self.omega_g <= self.omega_P

    @property
    def first_bound_holds(self) -> bool:
        """omega(f) <= omega(f) + omega(g), i.e. omega(g) >= 0."""
        return self.omega_g >= 0

    @property
    def equality(self) -> bool:
        return self.omega_f + self.omega_g == self.omega_P


def weight_inequality_audit(P: Pencil, f: HomogeneousForm, g: HomogeneousForm, lam) -> WeightAudit:
    if not (P.contains(f) and P.contains(g)):
        raise ValueError("both forms must be members of the pencil")
    if not plucker_minors(f, g):
        raise ValueError("the two members are proportional")
    return WeightAudit(affine_weight_curve(f, lam), affine_weight_curve(g, lam), affine_weight_pencil(P, lam))


def weight_argmin(f: HomogeneousForm, lam) -> tuple[int, int]:
    """Support term of least weight; ties go to the graded-smallest exponent."""
    b1, b2 = _b(lam)
    return min(f._coeffs, key=lambda ij: (b1 * ij[0] + b2 * ij[1], monomial_key(ij)))


@dataclass(frozen=True)
class Partner:
    g: HomogeneousForm
    pivot: tuple[int, int]
    audit: WeightAudit


def equalizing_partner(P: Pencil, f: HomogeneousForm, lam) -> Partner:
    """A second member g with omega(P) <= omega(f) + omega(g).

    g is obtained from a generator independent of f by cancelling its
    coefficient at the least-weight term of f.  Every minor pairing that
    term with the support of g is then nonzero, which gives the bound.
    """
    if not P.contains(f):
        raise ValueError("f is not a member of the pencil")
    h = P.g if plucker_minors(f, P.g) else P.f
    pivot = weight_argmin(f, lam)
    g = h - f.scale(h.coefficient(*pivot) / f.coefficient(*pivot))
    audit = WeightAudit(affine_weight_curve(f, lam), affine_weight_curve(g, lam), affine_weight_pencil(P, lam))
    return Partner(g, pivot, audit)

