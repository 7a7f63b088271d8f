"""The discriminant of a pencil as an exact polynomial in the parameter.

delta(s) is the resultant of the three partial derivatives of s*f + g.  The
resultant is evaluated at integer samples by Macaulay's formula (the
determinant of the degree-(3n-2) Macaulay matrix divided by its extraneous
minor) and then interpolated.  Its roots are the singular members; a
simple root means the member has exactly one ordinary node.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm

import flint
import sympy

from .forms import HomogeneousForm, Matrix3, change_coordinates, to_fraction
from .pencil import Pencil

S_SYM = sympy.Symbol("s")


def _exponents(total: int):
    """All (a, b, c) with a + b + c = total, in a fixed order."""
    return [(a, b, total - a - b) for a in range(total, -1, -1) for b in range(total - a, -1, -1)]


def _integer_partials(f: HomogeneousForm, scale: int):
    """Partials of scale*f as maps (a, b, c) -> int."""
    out = []
    for var in range(3):
        df = f.derivative(var)
        out.append({(i, j, df.degree - i - j): int(c * scale) for (i, j), c in df.items()})
    return out


class _MacaulayTemplate:
    """Row/column layout of the Macaulay matrix for three forms of degree n."""

    def __init__(self, n: int):
        self.n = n
        self.total = 3 * n - 2
        self.monos = _exponents(self.total)
        self.index = {m: k for k, m in enumerate(self.monos)}
        self.rows = []  # (which form, multiplier exponent)
        extraneous = []
        for k, m in enumerate(self.monos):
            big = [i for i in range(3) if m[i] >= n]
            i = big[0]
            mult = tuple(m[t] - (n if t == i else 0) for t in range(3))
            self.rows.append((i, mult))
            if len(big) >= 2:
                extraneous.append(k)
        self.extraneous = extraneous

    def matrices(self, partials):
        size = len(self.monos)
        rows = [[0] * size for _ in range(size)]
        for r, (i, mult) in enumerate(self.rows):
            row = rows[r]
            for e, c in partials[i].items():
                row[self.index[(e[0] + mult[0], e[1] + mult[1], e[2] + mult[2])]] = c
        return rows


def _det(rows) -> int:
    n = len(rows)
    if n == 0:
        return 1
    return int(flint.fmpz_mat(rows).det())


@dataclass
class Discriminant:
    """delta(s) with coefficients from degree 0 upwards, up to a nonzero scalar.

    ``expected_degree`` is 3(d-1)^2; the deficit is the order of vanishing
    at s = infinity, i.e. at the member f.
    """

    coeffs: list[Fraction]
    expected_degree: int
    coordinate_change: Matrix3 | None = None
    notes: list[str] = field(default_factory=list)

    @property
    def is_zero(self) -> bool:
        return not any(self.coeffs)

    @property
    def degree(self) -> int:
        nz = [k for k, c in enumerate(self.coeffs) if c]
        return nz[-1] if nz else -1

    @property
    def order_at_infinity(self) -> int:
        if self.is_zero:
            raise ValueError("the discriminant vanishes identically")
        return self.expected_degree - self.degree

    def poly(self) -> sympy.Poly:
        return sympy.Poly(
            [sympy.Rational(c.numerator, c.denominator) for c in reversed(self.coeffs)] or [0],
            S_SYM,
            domain=sympy.QQ,
        )

    def order_at(self, s0) -> int:
        """Order of vanishing at the parameter s0 (``None`` or inf for f)."""
        if self.is_zero:
            raise ValueError("the discriminant vanishes identically")
        if s0 is None or s0 == float("inf"):
            return self.order_at_infinity
        s0 = to_fraction(s0)
        p = self.poly()
        root = sympy.Rational(s0.numerator, s0.denominator)
        k = 0
        while p.degree() >= 0 and not p.is_zero and p.eval(root) == 0:
            p = sympy.Poly(sympy.quo(p.as_expr(), S_SYM - root), S_SYM, domain=sympy.QQ)
            k += 1
        return k

    def special_members(self) -> "SpecialMembers":
        """Rational roots (with orders) and the degree of the irrational part."""
        if self.is_zero:
            raise ValueError("the discriminant vanishes identically")
        rational: list[tuple[object, int]] = []
        irrational: list[tuple[sympy.Poly, int]] = []
        if self.degree > 0:
            _, facs = sympy.factor_list(self.poly())
            for fac, mult in facs:
                fac = sympy.Poly(fac, S_SYM, domain=sympy.QQ)
                if fac.degree() == 1:
                    a, b = fac.all_coeffs()
                    rational.append((to_fraction(-b / a), mult))
                elif fac.degree() > 1:
                    irrational.append((fac, mult))
        rational.sort(key=lambda r: r[0])
        inf_order = self.order_at_infinity
        if inf_order:
            rational.append((float("inf"), inf_order))
        return SpecialMembers(rational, irrational)


@dataclass
class SpecialMembers:
    rational: list[tuple[object, int]]  # (parameter, order of delta)
    irrational: list[tuple[sympy.Poly, int]]

    @property
    def irrational_degree(self) -> int:
        return sum(p.degree() * m for p, m in self.irrational)


def _unimodular(rng: random.Random) -> Matrix3:
    M = Matrix3.identity()
    for _ in range(4):
        i, j = rng.sample(range(3), 2)
        rows = [[1 if r == c else 0 for c in range(3)] for r in range(3)]
        rows[i][j] = rng.choice([-2, -1, 1, 2])
        M = M @ Matrix3(rows)
    return M


def _samples():
    yield 0
    for k in itertools.count(1):
        yield k
        yield -k


def pencil_discriminant(P: Pencil, seed: int = 0) -> Discriminant:
    """delta(s) = Res(grad(s f + g)) as an exact polynomial in s."""
    d = P.degree
    N = 3 * (d - 1) ** 2
    if d == 1:
        return Discriminant([Fraction(1)], 0)
    rng = random.Random(seed)
    f, g = P.f, P.g
    M = None
    template = _MacaulayTemplate(d - 1)
    for _attempt in range(8):
        L = lcm(*(c.denominator for _, c in list(f.items()) + list(g.items())))
        pf, pg = _integer_partials(f, L), _integer_partials(g, L)
        values = _sample_values(template, pf, pg, N)
        if values is not None:
            break
        M = _unimodular(rng) if M is None else M @ _unimodular(rng)
        f, g = change_coordinates(P.f, M), change_coordinates(P.g, M)
    else:  # pragma: no cover - eight random changes all degenerate
        raise RuntimeError("Macaulay extraneous minor vanished in every chart")
    notes = [] if M is None else ["extraneous minor vanished identically; coordinates changed"]
    if all(v == 0 for _, v in values):
        return Discriminant([Fraction(0)], N, M, notes)
    coeffs = _interpolate(values)
    den = lcm(*(c.denominator for c in coeffs))
    coeffs = [c * den for c in coeffs]
    content = 0
    for c in coeffs:
        content = gcd(content, int(c))
    lead = [c for c in coeffs if c][-1]
    sign = 1 if lead > 0 else -1
    coeffs = [Fraction(int(c) // content * sign) for c in coeffs]
    return Discriminant(coeffs, N, M, notes)


def _interpolate(values) -> list[Fraction]:
    """Coefficients (low degree first) of the polynomial through the samples."""
    xs = [x for x, _ in values]
    V = flint.fmpq_mat([[x**k for k in range(len(xs))] for x in xs])
    rhs = flint.fmpq_mat([[flint.fmpq(v.numerator, v.denominator)] for _, v in values])
    sol = V.solve(rhs)
    return [Fraction(int(sol[k, 0].p), int(sol[k, 0].q)) for k in range(len(xs))]


def _sample_values(template: _MacaulayTemplate, pf, pg, N: int):
    """N+1 exact values of delta at integer samples, or None if the minor is identically zero."""
    minor_size = len(template.extraneous)
    values = []
    skipped = 0
    for s in _samples():
        partials = [
            {e: s * pf[i].get(e, 0) + pg[i].get(e, 0) for e in set(pf[i]) | set(pg[i])}
            for i in range(3)
        ]
        rows = template.matrices(partials)
        ext = template.extraneous
        minor = _det([[rows[r][c] for c in ext] for r in ext])
        if minor == 0:
            skipped += 1
            if skipped > minor_size:
                return None
            continue
        values.append((s, Fraction(_det(rows), minor)))
        if len(values) == N + 1:
            return values
