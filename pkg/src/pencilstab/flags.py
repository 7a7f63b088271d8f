"""Coordinate changes realizing a flag (point, line through it).

A flag is moved to ((0:0:1), {x = 0}): the matrix M has M·e3 = p and sends
the line through e2 and e3 onto the given line, so f∘M carries the flag to
the coordinate flag and the diagonal torus of the new coordinates fixes it.
"""

from __future__ import annotations

import random
from fractions import Fraction

import sympy

from .algebra import binary_roots_poly
from .forms import HomogeneousForm, Matrix3, ProjectivePoint, translate_to_origin, translation_matrix

Line = tuple[Fraction, Fraction, Fraction]


def _dot(line, pt) -> Fraction:
    return sum(a * b for a, b in zip(line, pt))


def _kernel(line) -> list[tuple[Fraction, ...]]:
    """Two independent points of the line l . X = 0."""
    l0, l1, l2 = line
    cands = [(l1, -l0, Fraction(0)), (l2, Fraction(0), -l0), (Fraction(0), l2, -l1)]
    out = []
    for c in cands:
        if any(c) and all(_cross3(c, o) != (0, 0, 0) for o in out):
            out.append(c)
    return out[:2]


def _cross3(a, b):
    return (a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0])


def line_through(p: ProjectivePoint, q: ProjectivePoint) -> Line:
    ell = _cross3(p.coords, q.coords)
    if ell == (0, 0, 0):
        raise ValueError("points coincide")
    return tuple(Fraction(c) for c in ell)


def flag_matrix(p: ProjectivePoint, line: Line | None = None) -> Matrix3:
    """M with M·(0:0:1) = p and M({x = 0}) = line (line must pass through p)."""
    if line is None:
        return translation_matrix(p)
    if _dot(line, p.coords) != 0:
        raise ValueError("the line does not pass through the point")
    q = next(k for k in _kernel(line) if _cross3(k, p.coords) != (0, 0, 0))
    for i in range(3):
        r = tuple(Fraction(int(t == i)) for t in range(3))
        M = Matrix3.from_columns([r, q, p.coords])
        if M.is_invertible():
            return M
    raise AssertionError("no complement for the flag")  # pragma: no cover


def tangent_lines(f: HomogeneousForm, p: ProjectivePoint) -> list[tuple[Line, int]]:
    """Rational lines of the tangent cone of f at p, with multiplicity."""
    T = translation_matrix(p)
    g = translate_to_origin(f, p)
    m = min(i + j for i, j in g.support())
    if m == 0:
        return []
    u, v = sympy.symbols("u v")
    cone = sympy.Poly.from_dict(
        {(i, j): sympy.Rational(c.numerator, c.denominator) for (i, j), c in g.items() if i + j == m},
        u,
        v,
        domain=sympy.QQ,
    )
    Tinv = T.inverse()
    out = []
    for (u0, v0), mult in binary_roots_poly(cone).roots:
        local = (v0, -u0, Fraction(0))  # vanishes at (u0, v0)
        ell = tuple(sum(local[k] * Tinv[k, c] for k in range(3)) for c in range(3))
        out.append((ell, mult))
    return out


def random_shears(count: int, seed: int) -> list[Matrix3]:
    """Seeded unimodular changes used as a smoke test of the search."""
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        a, b, c = (rng.randint(-3, 3) for _ in range(3))
        M = Matrix3([[1, 0, 0], [a, 1, 0], [b, c, 1]]) @ Matrix3([[1, rng.randint(-3, 3), rng.randint(-3, 3)], [0, 1, rng.randint(-3, 3)], [0, 0, 1]])
        out.append(M)
    return out


def dedupe(mats) -> list[Matrix3]:
    seen = set()
    out = []
    for M in mats:
        if M not in seen:
            seen.add(M)
            out.append(M)
    return out
