from fractions import Fraction

import pytest
from hypothesis import strategies as st

from momentratio.series import Polynomial, TruncatedSeries

small_rationals = st.fractions(min_value=-4, max_value=4, max_denominator=12)


@st.composite
def polynomials(draw, max_degree=6):
    return Polynomial(draw(st.lists(small_rationals, max_size=max_degree + 1)))


@st.composite
def unit_series(draw, max_order=16):
    """Series with constant term 1, order between 1 and ``max_order``."""
    tail = draw(st.lists(small_rationals, min_size=1, max_size=max_order))
    return TruncatedSeries([Fraction(1), *tail])


_ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def acceptance_log():
    return _ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
