from fractions import Fraction

import pytest
from hypothesis import settings, strategies as st

from skeincert.exact_arith import LaurentPoly, RatFunc

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

small_fracs = st.fractions(min_value=-5, max_value=5, max_denominator=4)


@st.composite
def laurent(draw, max_terms=4, lo=-4, hi=4):
    n = draw(st.integers(0, max_terms))
    terms = {}
    for _ in range(n):
        terms[draw(st.integers(lo, hi))] = draw(small_fracs)
    return LaurentPoly(terms)


@st.composite
def nonzero_laurent(draw, **kw):
    p = draw(laurent(**kw))
    return p if not p.is_zero() else LaurentPoly.const(draw(st.sampled_from([1, -2, Fraction(1, 3)])))


@st.composite
def ratfunc(draw):
    return RatFunc(draw(laurent()), draw(nonzero_laurent(max_terms=3)))


@st.composite
def s4_exps(draw, max_exp=3):
    return tuple(draw(st.integers(0, max_exp)) for _ in range(7))


# -- acceptance reporting: one PASS/FAIL line per criterion ---------------------------

_CRITERIA = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


def pytest_runtest_logreport(report):
    marks = getattr(report, "criterion", None)
    if marks is None:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _CRITERIA[marks] = report.outcome == "passed"


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    mark = item.get_closest_marker("criterion")
    if mark is not None:
        outcome.get_result().criterion = mark.args


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for (number, title), ok in sorted(_CRITERIA.items()):
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  criterion {number}: {title}")
