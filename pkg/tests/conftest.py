from fractions import Fraction

import pytest

from waringlab.forms import Form


@pytest.fixture
def worked_example():
    """x0^4 x1 + x2^5."""
    return Form.from_terms(2, 5, [((4, 1, 0), 1), ((0, 0, 5), 1)])


def rat(*xs):
    return tuple(Fraction(x) for x in xs)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(RESULTS):
        ok, detail = RESULTS[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'} - {detail}")
