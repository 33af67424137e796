import sys
from pathlib import Path

import pytest
from hypothesis import strategies as st

from segrereg.simplicial import build_complex

DATA = Path(__file__).resolve().parents[1] / "src" / "segrereg" / "data"


@st.composite
def complexes(draw, min_n=1, max_n=5):
    """Random complex on [n] generated by a handful of random faces."""
    n = draw(st.integers(min_n, max_n))
    faces = draw(st.lists(st.sets(st.integers(1, n), max_size=n), max_size=6))
    return build_complex(n, faces)


@pytest.fixture
def two_points():
    return build_complex(2, [[1], [2]])


@pytest.fixture
def hollow_triangle():
    return build_complex(3, [[1, 2], [1, 3], [2, 3]])


@pytest.fixture
def data_dir():
    return DATA


def pytest_terminal_summary(terminalreporter):
    acceptance = sys.modules.get("test_acceptance")
    if acceptance is None or not acceptance.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(acceptance.RESULTS):
        terminalreporter.write_line(acceptance.RESULTS[number])
