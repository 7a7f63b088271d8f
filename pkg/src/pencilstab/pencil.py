"""Pencils of plane curves and their Plücker coordinates."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .forms import (
    HomogeneousForm,
    Matrix3,
    change_coordinates,
    format_form,
    monomial_key,
    parse_form,
    to_fraction,
)

INF = math.inf

PluckerKey = tuple[int, int, int, int]


class ProportionalGeneratorsError(ValueError):
    """The two generators span only a line, not a pencil."""


def plucker_minors(f: HomogeneousForm, g: HomogeneousForm) -> dict[PluckerKey, Fraction]:
    """All nonzero minors f_ij g_kl - g_ij f_kl with (i,j) < (k,l) in graded order."""
    keys = sorted(set(f._coeffs) | set(g._coeffs), key=monomial_key)
    fc, gc = f._coeffs, g._coeffs
    zero = Fraction(0)
    out: dict[PluckerKey, Fraction] = {}
    for a, p in enumerate(keys):
        fp, gp = fc.get(p, zero), gc.get(p, zero)
        for q in keys[a + 1:]:
            m = fp * gc.get(q, zero) - gp * fc.get(q, zero)
            if m:
                out[(p[0], p[1], q[0], q[1])] = m
    return out


@dataclass(frozen=True)
class Pencil:
    f: HomogeneousForm
    g: HomogeneousForm

    def __post_init__(self):
        if self.f.is_zero() or self.g.is_zero():
            raise ValueError("pencil generators must be nonzero")
        if self.f.degree != self.g.degree:
            raise ValueError("pencil generators must share one degree")
        if not plucker_minors(self.f, self.g):
            raise ProportionalGeneratorsError("generators are proportional")

    @property
    def degree(self) -> int:
        return self.f.degree

    @classmethod
    def from_strings(cls, f: str, g: str, degree: int) -> "Pencil":
        return cls(parse_form(f, degree), parse_form(g, degree))

    # -- Plücker data ---------------------------------------------------
    def plucker(self) -> dict[PluckerKey, Fraction]:
        return plucker(self)

    def states(self) -> set[tuple[int, int]]:
        """Exponent states (i+k, j+l) of the nonzero minors."""
        return {(i + k, j + l) for (i, j, k, l) in plucker(self)}

    def normalized_plucker(self) -> tuple[tuple[PluckerKey, Fraction], ...]:
        """Plücker map scaled so the first minor in key order equals 1."""
        pm = plucker(self)
        keys = sorted(pm, key=lambda k: (monomial_key(k[:2]), monomial_key(k[2:])))
        lead = pm[keys[0]]
        return tuple((k, pm[k] / lead) for k in keys)

    def same_pencil(self, other: "Pencil") -> bool:
        return self.normalized_plucker() == other.normalized_plucker()

    # -- members ----------------------------------------------------------
    def member(self, s) -> HomogeneousForm:
        return member(self, s)

    def contains(self, h: HomogeneousForm) -> bool:
        """True iff h is a nonzero form in the span of f and g."""
        if h.is_zero() or h.degree != self.degree:
            return False
        return _in_span(self.f, self.g, h)

    # -- io ---------------------------------------------------------------
    def to_json(self) -> dict:
        return {"degree": self.degree, "f": format_form(self.f), "g": format_form(self.g)}

    @classmethod
    def from_json(cls, data: dict) -> "Pencil":
        d = int(data["degree"])
        return cls(parse_form(data["f"], d), parse_form(data["g"], d))

    @classmethod
    def load(cls, path) -> "Pencil":
        return cls.from_json(json.loads(Path(path).read_text()))

    def __str__(self):
        return f"<{format_form(self.f)}, {format_form(self.g)}>"


def _in_span(f, g, h) -> bool:
    # h = a f + b g iff every 3x3 minor on the coefficient columns vanishes;
    # solve on two independent columns and verify on the rest.
    keys = sorted(set(f._coeffs) | set(g._coeffs) | set(h._coeffs), key=monomial_key)
    for a, p in enumerate(keys):
        for q in keys[a + 1:]:
            det = f.coefficient(*p) * g.coefficient(*q) - g.coefficient(*p) * f.coefficient(*q)
            if det:
                hp, hq = h.coefficient(*p), h.coefficient(*q)
                ca = (hp * g.coefficient(*q) - hq * g.coefficient(*p)) / det
                cb = (f.coefficient(*p) * hq - f.coefficient(*q) * hp) / det
                return f.scale(ca) + g.scale(cb) == h
    return False


def plucker(P: Pencil) -> dict[PluckerKey, Fraction]:
    """Exact nonzero Plücker minors of the pencil, keyed (i, j, k, l)."""
    pm = plucker_minors(P.f, P.g)
    if not pm:
        raise ProportionalGeneratorsError("generators are proportional")
    return pm


def member(P: Pencil, s) -> HomogeneousForm:
    """The member s*f + g; ``s = INF`` gives f."""
    if s == INF or s is None:
        return P.f
    s = to_fraction(s)
    return P.f.scale(s) + P.g


def reduce_against(P: Pencil, pivot: tuple[int, int]) -> Pencil:
    """Replace g by g - (g_ij / f_ij) f so that the new g has no (i, j) term."""
    fp = P.f.coefficient(*pivot)
    if not fp:
        raise ValueError(f"f has no {pivot} term to pivot on")
    gp = P.g.coefficient(*pivot)
    return Pencil(P.f, P.g - P.f.scale(gp / fp))


def change_pencil_coordinates(P: Pencil, M: Matrix3) -> Pencil:
    return Pencil(change_coordinates(P.f, M), change_coordinates(P.g, M))


def common_component(P: Pencil) -> HomogeneousForm:
    """gcd(f, g) up to a scalar; the constant 1 means a finite base locus."""
    from .algebra import form_gcd

    return form_gcd([P.f, P.g])


def plucker_to_json(pm: dict[PluckerKey, Fraction]) -> list[dict]:
    keys = sorted(pm, key=lambda k: (monomial_key(k[:2]), monomial_key(k[2:])))
    return [{"ijkl": list(k), "value": _frac(pm[k])} for k in keys]


def _frac(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"
