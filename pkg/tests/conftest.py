from pathlib import Path

import numpy as np
import pytest

DATA = Path(__file__).resolve().parents[1] / "src" / "diamond_lab" / "data"


@pytest.fixture
def data_dir():
    return DATA


@pytest.fixture
def ex():
    a = np.array([[1, 0], [0, 0]], dtype=complex)
    u = np.array([[0, 1], [0, 1]], dtype=complex) / np.sqrt(2)
    return a, u


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
