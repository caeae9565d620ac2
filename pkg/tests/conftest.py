import math

import numpy as np
import pytest

from tvkit.category import build_so3k, build_su2k, fibonacci


def builtin_categories():
    return [build_su2k(k) for k in range(1, 7)] + [build_so3k(3), build_so3k(5), fibonacci()]


def su2_s_closed_form(k: int) -> np.ndarray:
    n = k + 2
    a = np.arange(1, k + 2)
    return math.sqrt(2 / n) * np.sin(np.outer(a, a) * math.pi / n)


def su2_theta(k: int) -> np.ndarray:
    """exp(2 pi i h_a) with h_a = j(j+1)/(k+2), a = 2j."""
    a = np.arange(k + 1)
    return np.exp(2j * math.pi * a * (a + 2) / (4 * (k + 2)))


@pytest.fixture(scope="session")
def fib():
    return fibonacci()


@pytest.fixture(scope="session")
def su2_2():
    return build_su2k(2)


# one line per acceptance criterion, printed in the terminal summary
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def record(n: int, ok: bool, detail: str) -> bool:
    ACCEPTANCE[n] = (bool(ok), detail)
    return bool(ok)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n:>2}: {'PASS' if ok else 'FAIL'}  {detail}")
