import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def mixed_series(rng, n):
    """Draws from one of several shapes, including integer data full of ties."""
    kind = rng.integers(4)
    if kind == 0:
        return rng.standard_normal(n)
    if kind == 1:
        return rng.integers(0, 3, n).astype(float)
    if kind == 2:
        return rng.standard_t(2, n)
    steps = np.repeat(rng.normal(0, 3, 3), -(-n // 3))[:n]
    return steps + 0.1 * rng.standard_normal(n)


ACCEPTANCE_LINES = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for num in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[num])
