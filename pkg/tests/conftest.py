import pytest
from hypothesis import strategies as st

from digitfractal import new_digit_set

FAMILY_SPEC = [
    (3, [0, 2]),
    (2, [0, 1]),
    (4, [0, 1, 3]),
    (5, [0, 4]),
    (10, [0, 2, 5, 8]),
    (7, [0]),
    (3, [0, 1, 2]),
]


@pytest.fixture
def cantor():
    return new_digit_set(3, [0, 2])


@pytest.fixture(params=FAMILY_SPEC, ids=lambda p: f"q{p[0]}-{''.join(map(str, p[1]))}")
def family_ds(request):
    q, digits = request.param
    return new_digit_set(q, digits)


@st.composite
def digit_sets(draw, max_q=10):
    q = draw(st.integers(2, max_q))
    rest = draw(st.sets(st.integers(1, q - 1), max_size=q - 1)) if q > 1 else set()
    return new_digit_set(q, [0, *rest])


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
