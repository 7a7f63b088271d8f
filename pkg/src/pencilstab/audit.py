"""Random sampling of pencils and subgroups for the property audit."""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .forms import HomogeneousForm
from .pencil import Pencil, plucker_minors
from .weights import UNSTABLE, WeightVector, affine_weight_curve, affine_weight_pencil, equalizing_partner


def random_form(d: int, rng: random.Random, height: int = 9, density: float = 0.5) -> HomogeneousForm:
    """Integer form with coefficients in [-height, height]; never zero."""
    mons = [(i, j) for i in range(d + 1) for j in range(d + 1 - i)]
    while True:
        coeffs = {m: rng.randint(-height, height) for m in mons if rng.random() < density}
        f = HomogeneousForm(d, coeffs)
        if not f.is_zero():
            return f


def random_pencil(d: int, rng: random.Random, height: int = 9, density: float = 0.5) -> Pencil:
    while True:
        f, g = random_form(d, rng, height, density), random_form(d, rng, height, density)
        if plucker_minors(f, g):
            return Pencil(f, g)


def random_normalized_lambda(rng: random.Random, bound: int) -> WeightVector:
    """a_x >= a_y >= a_z, zero sum, entries at most ``bound`` in absolute value."""
    while True:
        ax = rng.randint(1, bound)
        ay = rng.randint(-bound, ax)
        az = -ax - ay
        if ax >= ay >= az and abs(az) <= bound:
            return WeightVector(ax, ay, az)


def random_member_pair(P: Pencil, rng: random.Random, height: int = 5):
    while True:
        a1, b1, a2, b2 = (rng.randint(-height, height) for _ in range(4))
        if a1 * b2 - a2 * b1 == 0:
            continue
        return P.f.scale(a1) + P.g.scale(b1), P.f.scale(a2) + P.g.scale(b2)


@dataclass
class AuditStats:
    count: int
    seed: int
    degree: int
    checks: dict = field(default_factory=dict)
    violations: dict = field(default_factory=dict)
    examples: list = field(default_factory=list)

    def bump(self, name: str, ok: bool, example=None):
        self.checks[name] = self.checks.get(name, 0) + 1
        self.violations.setdefault(name, 0)
        if not ok:
            self.violations[name] += 1
            if example is not None and len(self.examples) < 5:
                self.examples.append({"check": name, **example})

    def to_json(self) -> dict:
        return {
            "count": self.count,
            "seed": self.seed,
            "degree": self.degree,
            "checks": dict(sorted(self.checks.items())),
            "violations": dict(sorted(self.violations.items())),
            "total_violations": sum(self.violations.values()),
            "examples": self.examples,
        }


def random_audit(count: int, seed: int, degree: int, search_d1: bool = True) -> AuditStats:
    """Sample pencils and subgroups and count violations of the weight inequalities."""
    if count < 1:
        raise ValueError("count must be at least 1")
    if degree < 1:
        raise ValueError("degree must be at least 1")
    rng = random.Random(seed)
    stats = AuditStats(count, seed, degree)
    for _ in range(count):
        P = random_pencil(degree, rng)
        lam = random_normalized_lambda(rng, 6 * degree)
        f, g = random_member_pair(P, rng)
        wf, wg, wP = affine_weight_curve(f, lam), affine_weight_curve(g, lam), affine_weight_pencil(P, lam)
        ex = {"pencil": P.to_json(), "lambda": list(lam)}
        stats.bump("first-inequality", wf <= wf + wg, ex)
        stats.bump("sum-inequality", wf + wg <= wP, ex)
        part = equalizing_partner(P, f, lam)
        stats.bump("partner-upper-bound", part.audit.omega_P <= part.audit.omega_f + part.audit.omega_g, ex)
        stats.bump("partner-equality", part.audit.equality, ex)
        k = rng.randint(2, 5)
        scaled = tuple(k * a for a in lam)
        stats.bump("lambda-scaling", affine_weight_pencil(P, scaled) == k * wP, ex)
        c = rng.choice([-3, -2, 2, 3])
        stats.bump("generator-scaling", affine_weight_pencil(Pencil(P.f.scale(c), P.g), lam) == wP, ex)
        if degree == 1 and search_d1:
            from .search import pencil_stability_search

            res = pencil_stability_search(P, seed, positive=False)
            stats.bump("d1-unstable", res.certificate.verdict == UNSTABLE, ex)
    return stats
