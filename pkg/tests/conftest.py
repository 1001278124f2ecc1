from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import settings
from hypothesis import strategies as st

from lapsumudu.expr import COS, SIN, Expr

settings.register_profile("default", deadline=None, max_examples=50)
settings.load_profile("default")

PROBLEM_DIR = Path(__file__).resolve().parents[1] / "src" / "lapsumudu" / "problems"

small_q = st.builds(Fraction, st.integers(-6, 6), st.sampled_from([1, 2, 3]))
nonzero_q = small_q.filter(bool)
rate = st.sampled_from([Fraction(0), Fraction(1), Fraction(-1), Fraction(1, 2),
                        Fraction(-2), Fraction(2)])
freq = st.sampled_from([Fraction(1), Fraction(2), Fraction(1, 2), Fraction(3)])
trig = st.one_of(st.just(None), st.tuples(st.sampled_from([SIN, COS]), freq))


@st.composite
def basis_terms(draw, max_power=3, xi=True, tau=True):
    return Expr.term(
        draw(nonzero_q),
        px=draw(st.integers(0, max_power)) if xi else 0,
        py=draw(st.integers(0, max_power)) if tau else 0,
        ax=draw(rate) if xi else 0,
        ay=draw(rate) if tau else 0,
        trigx=draw(trig) if xi else None,
        trigy=draw(trig) if tau else None,
    )


@st.composite
def class_exprs(draw, max_terms=3, max_power=3, xi=True, tau=True):
    out = Expr()
    for t in draw(st.lists(basis_terms(max_power, xi, tau), min_size=1, max_size=max_terms)):
        out = out + t
    return out


# acceptance results collected across the session, printed in the summary
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


@pytest.fixture
def record():
    def _record(criterion: int, ok: bool, detail: str = ""):
        ACCEPTANCE[criterion] = (ok, detail)
        print(f"criterion {criterion}: {'PASS' if ok else 'FAIL'} {detail}")
    return _record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k}: {'PASS' if ok else 'FAIL'}  {detail}")
