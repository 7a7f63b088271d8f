"""Self-validating stability certificates.

A certificate carries the pencil, a verdict, the criterion that produced it,
an optional witness (coordinate change and subgroup) and a list of audit
entries.  Each entry is an exact statement that ``recheck_entry`` can
recompute from the pencil alone, without trusting the search that found it.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from .forms import Matrix3, ProjectivePoint, format_form, multiplicity_at, parse_form, to_fraction
from .pencil import Pencil, change_pencil_coordinates
from .weights import WeightVector, affine_weight_curve, affine_weight_pencil, threshold_margin

VERDICTS = ("unstable", "not-stable", "strictly-semistable", "semistable", "stable", "inconclusive")

TORUS_SEARCH = "torus-search"
MULTIPLICITY = "multiplicity"
MEMBER_STABILITY = "member-stability"
ONE_SSS = "one-sss"
TWO_SSS = "two-sss"
LCT = "lct"
CRITERIA = (TORUS_SEARCH, MULTIPLICITY, MEMBER_STABILITY, ONE_SSS, TWO_SSS, LCT)


def frac_str(c) -> str:
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def param_str(s) -> str:
    return "inf" if s == float("inf") or s is None else frac_str(s)


def parse_param(text: str):
    return float("inf") if text == "inf" else to_fraction(text)


@dataclass
class StabilityCertificate:
    verdict: str
    criterion: str
    pencil: Pencil
    flag: Matrix3 | None = None
    lam: WeightVector | None = None
    audit: list[dict] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    def __post_init__(self):
        if self.verdict not in VERDICTS:
            raise ValueError(f"unknown verdict {self.verdict!r}")
        if self.criterion not in CRITERIA:
            raise ValueError(f"unknown criterion {self.criterion!r}")
        if self.verdict in ("stable", "semistable") and self.criterion == TORUS_SEARCH:
            raise ValueError("a search can never certify (semi)stability")

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "criterion": self.criterion,
            "pencil": self.pencil.to_json(),
            "flag": None if self.flag is None else self.flag.to_json(),
            "lambda": None if self.lam is None else list(self.lam),
            "audit": self.audit,
            "notes": self.notes,
        }

    @classmethod
    def from_json(cls, data: dict) -> "StabilityCertificate":
        return cls(
            verdict=data["verdict"],
            criterion=data["criterion"],
            pencil=Pencil.from_json(data["pencil"]),
            flag=None if data.get("flag") is None else Matrix3.from_json(data["flag"]),
            lam=None if data.get("lambda") is None else WeightVector(*data["lambda"]),
            audit=list(data.get("audit", [])),
            notes=list(data.get("notes", [])),
        )

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    def validate(self) -> list[tuple[int, bool, str]]:
        return [(k, *recheck_entry(self.pencil, e)) for k, e in enumerate(self.audit)]

    def is_valid(self) -> bool:
        return all(ok for _, ok, _ in self.validate())


# ---------------------------------------------------------------------------
# Audit entries


def _relation_holds(lhs, rel: str, rhs) -> bool:
    return {">": lhs > rhs, ">=": lhs >= rhs, "=": lhs == rhs, "<": lhs < rhs, "<=": lhs <= rhs}[rel]


def pencil_weight_entry(P: Pencil, M: Matrix3, lam, relation: str) -> dict:
    """omega(P∘M, lambda) compared with (2d/3)(a_x + a_y - 2a_z)."""
    Q = change_pencil_coordinates(P, M)
    omega = affine_weight_pencil(Q, lam)
    return {
        "kind": "pencil-weight",
        "flag": M.to_json(),
        "lambda": list(lam),
        "omega": omega,
        "threshold": frac_str(Fraction(2 * P.degree, 3) * (lam[0] + lam[1] - 2 * lam[2])),
        "relation": relation,
    }


def curve_weight_entry(form, M: Matrix3, lam, relation: str, label: str = "") -> dict:
    from .forms import change_coordinates

    g = change_coordinates(form, M)
    omega = affine_weight_curve(g, lam)
    return {
        "kind": "curve-weight",
        "member": label,
        "form": format_form(form),
        "degree": form.degree,
        "flag": M.to_json(),
        "lambda": list(lam),
        "omega": omega,
        "threshold": frac_str(Fraction(form.degree, 3) * (lam[0] + lam[1] - 2 * lam[2])),
        "relation": relation,
    }


def multiplicity_entry(label: str, form, p: ProjectivePoint) -> dict:
    return {
        "kind": "multiplicity",
        "member": label,
        "form": format_form(form),
        "degree": form.degree,
        "point": p.to_json(),
        "value": multiplicity_at(form, p),
    }


def lct_entry(label: str, form, value, relation: str, threshold, point: ProjectivePoint | None = None) -> dict:
    return {
        "kind": "lct",
        "member": label,
        "form": format_form(form),
        "degree": form.degree,
        "point": None if point is None else point.to_json(),
        "value": frac_str(value),
        "relation": relation,
        "threshold": frac_str(threshold),
    }


def discriminant_entry(disc, special) -> dict:
    return {
        "kind": "discriminant",
        "coeffs": [frac_str(c) for c in disc.coeffs],
        "expected_degree": disc.expected_degree,
        "rational_roots": [[param_str(s), m] for s, m in special.rational],
        "irrational_factors": [[str(p.as_expr()), m] for p, m in special.irrational],
    }


def member_entry(label: str, status: str, reason: str) -> dict:
    return {"kind": "member-status", "member": label, "status": status, "reason": reason}


def recheck_entry(P: Pencil, e: dict) -> tuple[bool, str]:
    """Recompute one audit entry from scratch."""
    kind = e.get("kind")
    try:
        if kind == "pencil-weight":
            M = Matrix3.from_json(e["flag"])
            lam = tuple(e["lambda"])
            omega = affine_weight_pencil(change_pencil_coordinates(P, M), lam)
            if omega != e["omega"]:
                return False, f"omega recomputed as {omega}, recorded {e['omega']}"
            margin = threshold_margin(omega, lam, 2 * P.degree)
            return _relation_holds(margin, e["relation"], 0), f"margin {margin}"
        if kind == "curve-weight":
            from .forms import change_coordinates

            f = parse_form(e["form"], e["degree"])
            if not P.contains(f):
                return False, "form is not a member of the pencil"
            lam = tuple(e["lambda"])
            omega = affine_weight_curve(change_coordinates(f, Matrix3.from_json(e["flag"])), lam)
            if omega != e["omega"]:
                return False, f"omega recomputed as {omega}"
            margin = threshold_margin(omega, lam, e["degree"])
            return _relation_holds(margin, e["relation"], 0), f"margin {margin}"
        if kind == "multiplicity":
            f = parse_form(e["form"], e["degree"])
            m = multiplicity_at(f, ProjectivePoint(e["point"]))
            return (m == e["value"] and P.contains(f)), f"multiplicity {m}"
        if kind == "mult-sum":
            lhs = 3 * (e["mult_f"] + e["mult_g"])
            return _relation_holds(lhs, e["relation"], 4 * P.degree), f"3*(sum) = {lhs} vs 4d = {4 * P.degree}"
        if kind == "lct":
            from .lct import curve_lct, lct_at_point

            f = parse_form(e["form"], e["degree"])
            if not P.contains(f):
                return False, "form is not a member of the pencil"
            if e["point"] is None:
                est = curve_lct(f).estimate
            else:
                est = lct_at_point(f, ProjectivePoint(e["point"]))
            val = est.best_lower
            if val is None or val != to_fraction(e["value"]):
                return False, f"lct recomputed as {val}"
            return _relation_holds(val, e["relation"], to_fraction(e["threshold"])), f"lct {frac_str(val)}"
        if kind == "discriminant":
            from .discriminant import pencil_discriminant

            disc = pencil_discriminant(P)
            ok = [frac_str(c) for c in disc.coeffs] == e["coeffs"]
            return ok, "discriminant recomputed"
        if kind == "smooth":
            from .lct import curve_lct

            f = parse_form(e["form"], e["degree"])
            return curve_lct(f).smooth and P.contains(f), "smoothness recomputed"
        if kind == "member-status":
            return True, "summary"
        if kind == "general-member":
            return True, "summary"
    except Exception as exc:  # a malformed entry fails validation rather than crashing
        return False, f"{type(exc).__name__}: {exc}"
    return False, f"unknown audit kind {kind!r}"

