import math

import numpy as np
import pytest
from hypothesis import strategies as st

from wignerabcd import Mat2


def max_diff(m1, m2) -> float:
    return max(abs(x - y) for x, y in zip(m1, m2))


def as_array(m: Mat2) -> np.ndarray:
    return np.array([[m.a, m.b], [m.c, m.d]])


angles = st.floats(-math.pi, math.pi, allow_nan=False)
etas = st.floats(-5.0, 5.0, allow_nan=False)


@pytest.fixture
def worked():
    """The ``[[1, 1], [-1, 0]]`` matrix used throughout the examples."""
    return Mat2(1.0, 1.0, -1.0, 0.0)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(results):
        terminalreporter.write_line(results[number])
