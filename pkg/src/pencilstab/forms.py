"""Exact sparse ternary forms over the rationals.

A degree-d form is stored as a map ``(i, j) -> coefficient`` for the
monomial ``x^i y^j z^(d-i-j)``.  Zero coefficients are never stored, so
"f_ij != 0" is a membership test on the map.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import gcd
from typing import Iterable, Mapping

import sympy

__all__ = [
    "Rational",
    "HomogeneousForm",
    "Matrix3",
    "ProjectivePoint",
    "FormSyntaxError",
    "InhomogeneousFormError",
    "parse_form",
    "format_form",
    "change_coordinates",
    "translate_to_origin",
    "translation_matrix",
    "multiplicity_at",
    "dehomogenize",
    "monomial_key",
    "to_fraction",
]

Rational = Fraction
X, Y, Z = sympy.symbols("x y z")


def to_fraction(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings; floats are refused."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not coefficients")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    if isinstance(value, sympy.Rational):
        return Fraction(int(value.p), int(value.q))
    if hasattr(value, "numerator") and hasattr(value, "denominator") and not isinstance(value, float):
        return Fraction(int(value.numerator), int(value.denominator))
    raise TypeError(f"cannot use {value!r} as an exact rational")


def monomial_key(ij: tuple[int, int]) -> tuple[int, int]:
    """Graded order on exponent pairs: total x,y-degree first, then larger i first.

    This is the ordering used for Plücker keys, pivots and tie-breaks.
    """
    i, j = ij
    return (i + j, -i)


class HomogeneousForm:
    """A form of fixed degree in x, y, z with exact rational coefficients."""

    __slots__ = ("degree", "_coeffs", "_hash")

    def __init__(self, degree: int, coeffs: Mapping[tuple[int, int], object] | None = None):
        if degree < 0:
            raise ValueError("degree must be non-negative")
        clean: dict[tuple[int, int], Fraction] = {}
        for (i, j), c in (coeffs or {}).items():
            i, j = int(i), int(j)
            if i < 0 or j < 0 or i + j > degree:
                raise ValueError(f"exponent ({i},{j}) out of range for degree {degree}")
            c = to_fraction(c)
            if c:
                clean[(i, j)] = clean.get((i, j), Fraction(0)) + c
                if not clean[(i, j)]:
                    del clean[(i, j)]
        self.degree = degree
        self._coeffs = clean
        self._hash = None

    # -- basic protocol -------------------------------------------------
    @property
    def coeffs(self) -> dict[tuple[int, int], Fraction]:
        return dict(self._coeffs)

    def coefficient(self, i: int, j: int) -> Fraction:
        return self._coeffs.get((i, j), Fraction(0))

    def support(self) -> list[tuple[int, int]]:
        return sorted(self._coeffs, key=monomial_key)

    def items(self):
        return self._coeffs.items()

    def is_zero(self) -> bool:
        return not self._coeffs

    def __bool__(self):
        return bool(self._coeffs)

    def __len__(self):
        return len(self._coeffs)

    def __eq__(self, other):
        if not isinstance(other, HomogeneousForm):
            return NotImplemented
        if not self._coeffs and not other._coeffs:
            return True
        return self.degree == other.degree and self._coeffs == other._coeffs

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.degree, frozenset(self._coeffs.items())))
        return self._hash

    def __repr__(self):
        return f"HomogeneousForm({self.degree}, {format_form(self)!r})"

    def __str__(self):
        return format_form(self)

    # -- arithmetic -----------------------------------------------------
    def _check_same_degree(self, other: "HomogeneousForm"):
        if self.degree != other.degree and self and other:
            raise ValueError(f"degree mismatch: {self.degree} vs {other.degree}")

    def __add__(self, other):
        if not isinstance(other, HomogeneousForm):
            return NotImplemented
        self._check_same_degree(other)
        if not other:
            return self
        if not self:
            return other
        out = dict(self._coeffs)
        for k, c in other._coeffs.items():
            out[k] = out.get(k, Fraction(0)) + c
        return HomogeneousForm(self.degree, out)

    def __neg__(self):
        return HomogeneousForm(self.degree, {k: -c for k, c in self._coeffs.items()})

    def __sub__(self, other):
        if not isinstance(other, HomogeneousForm):
            return NotImplemented
        return self + (-other)

    def scale(self, c) -> "HomogeneousForm":
        c = to_fraction(c)
        return HomogeneousForm(self.degree, {k: c * v for k, v in self._coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, HomogeneousForm):
            out: dict[tuple[int, int], Fraction] = {}
            for (i, j), a in self._coeffs.items():
                for (k, l), b in other._coeffs.items():
                    key = (i + k, j + l)
                    out[key] = out.get(key, Fraction(0)) + a * b
            return HomogeneousForm(self.degree + other.degree, out)
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    __rmul__ = __mul__

    # -- calculus and evaluation ----------------------------------------
    def evaluate(self, point: Iterable) -> Fraction:
        x, y, z = (to_fraction(t) for t in point)
        d = self.degree
        total = Fraction(0)
        for (i, j), c in self._coeffs.items():
            total += c * x**i * y**j * z ** (d - i - j)
        return total

    def derivative(self, var: int) -> "HomogeneousForm":
        """Partial derivative with respect to x (0), y (1) or z (2)."""
        if self.degree == 0:
            return HomogeneousForm(0)
        d = self.degree
        out = {}
        for (i, j), c in self._coeffs.items():
            k = d - i - j
            if var == 0 and i:
                out[(i - 1, j)] = c * i
            elif var == 1 and j:
                out[(i, j - 1)] = c * j
            elif var == 2 and k:
                out[(i, j)] = c * k
        return HomogeneousForm(d - 1, out)

    def gradient(self) -> tuple["HomogeneousForm", "HomogeneousForm", "HomogeneousForm"]:
        return (self.derivative(0), self.derivative(1), self.derivative(2))

    def primitive(self) -> "HomogeneousForm":
        """Scale to integer coefficients with content 1 and positive leading term."""
        if not self._coeffs:
            return self
        den = 1
        for c in self._coeffs.values():
            den = den * c.denominator // gcd(den, c.denominator)
        nums = [int(c * den) for c in self._coeffs.values()]
        g = 0
        for n in nums:
            g = gcd(g, n)
        lead = self._coeffs[max(self._coeffs, key=lambda k: (k[0], k[1]))]
        sign = 1 if lead > 0 else -1
        return self.scale(Fraction(den * sign, g))

    # -- sympy bridge ---------------------------------------------------
    def to_sympy(self) -> sympy.Poly:
        d = self.degree
        terms = {(i, j, d - i - j): sympy.Rational(c.numerator, c.denominator) for (i, j), c in self._coeffs.items()}
        if not terms:
            return sympy.Poly(0, X, Y, Z, domain=sympy.QQ)
        return sympy.Poly.from_dict(terms, X, Y, Z, domain=sympy.QQ)

    @classmethod
    def from_sympy(cls, poly, degree: int | None = None) -> "HomogeneousForm":
        if not isinstance(poly, sympy.Poly):
            poly = sympy.Poly(poly, X, Y, Z, domain=sympy.QQ)
        elif poly.gens != (X, Y, Z):
            poly = sympy.Poly(poly.as_expr(), X, Y, Z, domain=sympy.QQ)
        if poly.is_zero:
            return cls(degree or 0)
        if degree is None:
            degree = poly.total_degree()
        coeffs = {}
        for (i, j, k), c in poly.terms():
            if i + j + k != degree:
                raise InhomogeneousFormError("polynomial is not homogeneous of the requested degree")
            coeffs[(i, j)] = to_fraction(sympy.Rational(c))
        return cls(degree, coeffs)


class Matrix3:
    """A 3x3 matrix of rationals, used as the linear substitution v -> M v."""

    __slots__ = ("rows",)

    def __init__(self, rows):
        rows = tuple(tuple(to_fraction(v) for v in row) for row in rows)
        if len(rows) != 3 or any(len(r) != 3 for r in rows):
            raise ValueError("Matrix3 needs 3 rows of 3 entries")
        self.rows = rows

    @classmethod
    def identity(cls) -> "Matrix3":
        return cls([[1, 0, 0], [0, 1, 0], [0, 0, 1]])

    @classmethod
    def from_columns(cls, cols) -> "Matrix3":
        cols = [tuple(c) for c in cols]
        return cls([[cols[c][r] for c in range(3)] for r in range(3)])

    def __getitem__(self, idx):
        r, c = idx
        return self.rows[r][c]

    def column(self, c: int) -> tuple[Fraction, Fraction, Fraction]:
        return tuple(self.rows[r][c] for r in range(3))

    def det(self) -> Fraction:
        (a, b, c), (d, e, f), (g, h, i) = self.rows
        return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)

    def is_invertible(self) -> bool:
        return self.det() != 0

    def __matmul__(self, other: "Matrix3") -> "Matrix3":
        return Matrix3(
            [[sum(self.rows[r][k] * other.rows[k][c] for k in range(3)) for c in range(3)] for r in range(3)]
        )

    def apply(self, v) -> tuple[Fraction, Fraction, Fraction]:
        v = [to_fraction(t) for t in v]
        return tuple(sum(self.rows[r][k] * v[k] for k in range(3)) for r in range(3))

    def inverse(self) -> "Matrix3":
        det = self.det()
        if not det:
            raise ValueError("singular matrix")
        m = self.rows
        cof = [
            [
                (m[(r + 1) % 3][(c + 1) % 3] * m[(r + 2) % 3][(c + 2) % 3]
                 - m[(r + 1) % 3][(c + 2) % 3] * m[(r + 2) % 3][(c + 1) % 3])
                for c in range(3)
            ]
            for r in range(3)
        ]
        return Matrix3([[cof[c][r] / det for c in range(3)] for r in range(3)])

    def transpose(self) -> "Matrix3":
        return Matrix3([[self.rows[c][r] for c in range(3)] for r in range(3)])

    def to_json(self) -> list[list[str]]:
        return [[_fraction_str(v) for v in row] for row in self.rows]

    @classmethod
    def from_json(cls, data) -> "Matrix3":
        return cls([[to_fraction(v) for v in row] for row in data])

    def __eq__(self, other):
        return isinstance(other, Matrix3) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return f"Matrix3({self.to_json()})"


class ProjectivePoint:
    """A rational point of P^2, normalized so the last nonzero coordinate is 1."""

    __slots__ = ("coords",)

    def __init__(self, coords):
        c = [to_fraction(t) for t in coords]
        if len(c) != 3:
            raise ValueError("a point of P^2 has three coordinates")
        nz = [t for t in c if t]
        if not nz:
            raise ValueError("(0:0:0) is not a projective point")
        last = [t for t in c if t][-1]
        self.coords = tuple(t / last for t in c)

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def __eq__(self, other):
        return isinstance(other, ProjectivePoint) and self.coords == other.coords

    def __hash__(self):
        return hash(self.coords)

    def sort_key(self):
        return tuple((c.numerator, c.denominator) for c in self.coords)

    def to_json(self) -> list[str]:
        return [_fraction_str(c) for c in self.coords]

    def __repr__(self):
        return "(" + ":".join(_fraction_str(c) for c in self.coords) + ")"


ORIGIN = ProjectivePoint((0, 0, 1))


def _fraction_str(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


# ---------------------------------------------------------------------------
# Parsing and printing

class FormSyntaxError(ValueError):
    pass


class InhomogeneousFormError(ValueError):
    pass


_TOKEN = re.compile(r"\s*(?:(\d+)|([xyz])|(\*\*|[-+*/^()]))")


def _tokenize(text: str):
    pos = 0
    out = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise FormSyntaxError(f"unexpected character at {pos}: {text[pos:pos + 10]!r}")
        num, var, op = m.groups()
        if num is not None:
            out.append(("num", int(num)))
        elif var is not None:
            out.append(("var", "xyz".index(var)))
        else:
            out.append(("op", "^" if op == "**" else op))
        pos = m.end()
    return out


class _Parser:
    # Polynomials are dicts {(a, b, c): Fraction} during parsing.

    def __init__(self, tokens):
        self.toks = tokens
        self.pos = 0

    def peek(self):
        return self.toks[self.pos] if self.pos < len(self.toks) else (None, None)

    def take(self):
        tok = self.peek()
        self.pos += 1
        return tok

    def expect_op(self, op):
        kind, val = self.take()
        if kind != "op" or val != op:
            raise FormSyntaxError(f"expected {op!r}")

    def parse(self):
        if not self.toks:
            raise FormSyntaxError("empty expression")
        poly = self.expr()
        if self.pos != len(self.toks):
            raise FormSyntaxError(f"trailing input at token {self.pos}")
        return poly

    def expr(self):
        acc = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            _, op = self.take()
            rhs = self.term()
            acc = _padd(acc, rhs if op == "+" else _pscale(rhs, Fraction(-1)))
        return acc

    def term(self):
        acc = self.unary()
        while True:
            kind, val = self.peek()
            if kind == "op" and val == "*":
                self.take()
                acc = _pmul(acc, self.unary())
            elif kind == "op" and val == "/":
                self.take()
                den = self.unary()
                if len(den) != 1 or (0, 0, 0) not in den:
                    raise FormSyntaxError("division is only allowed by a nonzero constant")
                acc = _pscale(acc, 1 / den[(0, 0, 0)])
            elif kind in ("num", "var") or (kind == "op" and val == "("):
                # implicit multiplication, e.g. "2x" or "x(y+z)"
                acc = _pmul(acc, self.unary())
            else:
                return acc

    def unary(self):
        kind, val = self.peek()
        if kind == "op" and val in "+-":
            self.take()
            inner = self.unary()
            return inner if val == "+" else _pscale(inner, Fraction(-1))
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            kind, val = self.take()
            if kind != "num":
                raise FormSyntaxError("exponent must be a non-negative integer literal")
            out = {(0, 0, 0): Fraction(1)}
            for _ in range(val):
                out = _pmul(out, base)
            return out
        return base

    def atom(self):
        kind, val = self.take()
        if kind == "num":
            return {(0, 0, 0): Fraction(val)} if val else {}
        if kind == "var":
            e = [0, 0, 0]
            e[val] = 1
            return {tuple(e): Fraction(1)}
        if kind == "op" and val == "(":
            inner = self.expr()
            self.expect_op(")")
            return inner
        raise FormSyntaxError("unexpected end of expression" if kind is None else f"unexpected token {val!r}")


def _padd(a, b):
    out = dict(a)
    for k, c in b.items():
        out[k] = out.get(k, Fraction(0)) + c
        if not out[k]:
            del out[k]
    return out


def _pscale(a, c):
    return {k: v * c for k, v in a.items()} if c else {}


def _pmul(a, b):
    out = {}
    for ka, ca in a.items():
        for kb, cb in b.items():
            k = (ka[0] + kb[0], ka[1] + kb[1], ka[2] + kb[2])
            out[k] = out.get(k, Fraction(0)) + ca * cb
    return {k: v for k, v in out.items() if v}


def parse_form(text: str, degree: int) -> HomogeneousForm:
    """Parse a polynomial in x, y, z and check it is a nonzero form of ``degree``.

    >>> parse_form("x^3 + y^3 + z^3", 3).coeffs == {(3, 0): 1, (0, 3): 1, (0, 0): 1}
    True
    """
    poly = _Parser(_tokenize(text)).parse()
    if not poly:
        raise ValueError("zero polynomial")
    degrees = {sum(k) for k in poly}
    if len(degrees) > 1:
        raise InhomogeneousFormError(f"inhomogeneous polynomial (degrees {sorted(degrees)})")
    (deg,) = degrees
    if deg != degree:
        raise InhomogeneousFormError(f"form has degree {deg}, expected {degree}")
    return HomogeneousForm(degree, {(a, b): c for (a, b, _), c in poly.items()})


def format_form(f: HomogeneousForm) -> str:
    """Canonical text: monomials in graded-lex order (x > y > z), explicit ``^``."""
    if f.is_zero():
        return "0"
    d = f.degree
    parts = []
    for (i, j) in sorted(f._coeffs, key=lambda k: (-k[0], -k[1])):
        c = f._coeffs[(i, j)]
        k = d - i - j
        mono = "*".join(
            v if e == 1 else f"{v}^{e}" for v, e in (("x", i), ("y", j), ("z", k)) if e
        )
        mag = abs(c)
        if not mono:
            body = _fraction_str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{_fraction_str(mag)}*{mono}"
        sign = "-" if c < 0 else "+"
        parts.append((sign, body))
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


# ---------------------------------------------------------------------------
# Coordinate changes

def _linear_powers(row, n):
    """Powers 0..n of the linear form a x + b y + c z, as {(i, j): coeff} maps of degree k."""
    a, b, c = row
    pows = [{(0, 0): Fraction(1)}]
    for _ in range(n):
        prev = pows[-1]
        nxt: dict[tuple[int, int], Fraction] = {}
        for (i, j), v in prev.items():
            for (di, dj), w in (((1, 0), a), ((0, 1), b), ((0, 0), c)):
                if w:
                    key = (i + di, j + dj)
                    nxt[key] = nxt.get(key, Fraction(0)) + v * w
        pows.append({k: v for k, v in nxt.items() if v})
    return pows


def change_coordinates(f: HomogeneousForm, M: Matrix3) -> HomogeneousForm:
    """Return f∘M, i.e. ``(f∘M)(v) = f(M v)``.

    With this orientation ``change_coordinates(f, M @ N)`` equals
    ``change_coordinates(change_coordinates(f, M), N)``.
    """
    if not M.is_invertible():
        raise ValueError("coordinate change must be invertible")
    d = f.degree
    px, py, pz = (_linear_powers(M.rows[r], d) for r in range(3))
    out: dict[tuple[int, int], Fraction] = {}
    for (i, j), c in f.items():
        k = d - i - j
        acc = _mul_maps(_mul_maps(px[i], py[j]), pz[k])
        for key, v in acc.items():
            out[key] = out.get(key, Fraction(0)) + c * v
    return HomogeneousForm(d, out)


def _mul_maps(a, b):
    out: dict[tuple[int, int], Fraction] = {}
    for (i, j), v in a.items():
        for (k, l), w in b.items():
            key = (i + k, j + l)
            out[key] = out.get(key, Fraction(0)) + v * w
    return out


def translation_matrix(p: ProjectivePoint) -> Matrix3:
    """Deterministic invertible M with M·(0:0:1) = p.

    The third column is p; the other two are the standard basis vectors
    with index different from the last nonzero coordinate of p.
    """
    p = p if isinstance(p, ProjectivePoint) else ProjectivePoint(p)
    last = max(i for i in range(3) if p[i])
    basis = [tuple(Fraction(int(r == i)) for r in range(3)) for i in range(3) if i != last]
    return Matrix3.from_columns(basis + [p.coords])


def translate_to_origin(f: HomogeneousForm, p: ProjectivePoint) -> HomogeneousForm:
    """Rewrite f in coordinates where p becomes (0:0:1)."""
    return change_coordinates(f, translation_matrix(p))


def dehomogenize(f: HomogeneousForm) -> dict[tuple[int, int], Fraction]:
    """The affine polynomial f(u, v, 1) as a map (i, j) -> coefficient."""
    return f.coeffs


def multiplicity_at(f: HomogeneousForm, p: ProjectivePoint) -> int:
    """Lowest total degree of the local expansion of f at p (0 iff f(p) != 0)."""
    if f.is_zero():
        raise ValueError("multiplicity of the zero form is undefined")
    g = translate_to_origin(f, p)
    return min(i + j for (i, j) in g.support())
