from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from pencilstab.forms import HomogeneousForm, Matrix3, ProjectivePoint
from pencilstab.pencil import Pencil, plucker_minors
from pencilstab.weights import WeightVector

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow, HealthCheck.large_base_example])
settings.load_profile("default")


small_int = st.integers(-9, 9)
small_frac = st.builds(Fraction, st.integers(-6, 6), st.integers(1, 4))


@st.composite
def forms(draw, degree=None, max_degree=4, nonzero=True):
    d = degree if degree is not None else draw(st.integers(1, max_degree))
    mons = [(i, j) for i in range(d + 1) for j in range(d + 1 - i)]
    coeffs = draw(st.dictionaries(st.sampled_from(mons), small_int, max_size=len(mons)))
    f = HomogeneousForm(d, coeffs)
    if nonzero and f.is_zero():
        f = HomogeneousForm(d, {draw(st.sampled_from(mons)): draw(st.integers(1, 9))})
    return f


@st.composite
def pencils(draw, degree=None, max_degree=4):
    d = degree if degree is not None else draw(st.integers(1, max_degree))
    f = draw(forms(degree=d))
    g = draw(forms(degree=d))
    if not plucker_minors(f, g):
        # perturb g by a monomial absent from f's span
        mons = [(i, j) for i in range(d + 1) for j in range(d + 1 - i)]
        for m in mons:
            h = g + HomogeneousForm(d, {m: 1})
            if plucker_minors(f, h):
                g = h
                break
    return Pencil(f, g)


@st.composite
def matrices(draw, invertible=True):
    rows = [[draw(st.integers(-3, 3)) for _ in range(3)] for _ in range(3)]
    M = Matrix3(rows)
    k = 1
    while invertible and not M.is_invertible():
        # shifting by k*I is singular for at most three values of k
        M = Matrix3([[v + k * (r == c) for c, v in enumerate(row)] for r, row in enumerate(rows)])
        k += 1
    return M


@st.composite
def points(draw):
    c = [draw(small_frac) for _ in range(3)]
    if not any(c):
        c[2] = Fraction(1)
    return ProjectivePoint(c)


@st.composite
def weights(draw, normalized=False, bound=12):
    while True:
        ax, ay = draw(st.integers(-bound, bound)), draw(st.integers(-bound, bound))
        if (ax, ay) == (0, 0):
            continue
        lam = WeightVector(ax, ay)
        if not normalized or lam.is_normalized():
            return lam


def parse(text, d):
    from pencilstab.forms import parse_form

    return parse_form(text, d)


@pytest.fixture(scope="session")
def corpus():
    from pencilstab.corpus import load_corpus

    return load_corpus()


# one line per acceptance criterion, echoed at the end of the run
ACCEPTANCE_LINES: list[str] = []


def acceptance_line(label: str, ok: bool, detail: str = "") -> None:
    line = f"{label}: {'PASS' if ok else 'FAIL'}" + (f" ({detail})" if detail else "")
    ACCEPTANCE_LINES.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: (int(s.split()[1].rstrip(":").split("/")[0].rstrip("ab")), s)):
            terminalreporter.write_line(line)
