from fractions import Fraction

import pytest
import sympy
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from dybe.exact import Poly, make, sc_format
from dybe.intertwine import clear_cache

settings.register_profile(
    "dybe", deadline=None, max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("dybe")

X = sympy.symbols("x1 x2")


def to_sympy(s, names=("x1", "x2")):
    """Independent reading of a scalar through its printed form."""
    text = s.format(names) if isinstance(s, Poly) else sc_format(s, names)
    text = text.replace("^", "**")
    return sympy.sympify(text, locals={n: sympy.Symbol(n) for n in names})


def sym_equal(a, b) -> bool:
    return sympy.simplify(a - b) == 0


fractions = st.fractions(min_value=-20, max_value=20, max_denominator=12)


@st.composite
def polys(draw, nvars=2, max_terms=5, max_deg=3):
    n = draw(st.integers(0, max_terms))
    terms = {}
    for _ in range(n):
        e = tuple(draw(st.integers(0, max_deg)) for _ in range(nvars))
        terms[e] = draw(fractions)
    return Poly({k: v for k, v in terms.items() if v}, nvars)


@st.composite
def ratfuns(draw, nvars=2):
    num = draw(polys(nvars))
    den = draw(polys(nvars).filter(lambda p: not p.is_zero()))
    return make(num, den)


def Q(*xs):
    return tuple(Fraction(x) for x in xs)


@pytest.fixture(autouse=True)
def _fresh_cache():
    clear_cache()
    yield


ACCEPTANCE: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        status, secs, note = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n:2d}: {status} ({secs:.2f}s) {note}")
