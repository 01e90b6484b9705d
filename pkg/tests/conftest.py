import math

import numpy as np
import pytest

from eomsim.config import resolve_params

TWO_PI = 2 * math.pi
OMEGA_B = TWO_PI * 20e9


@pytest.fixture
def fig2_params():
    """Weak-coupling parameter set of the exciton-photon figures (Delta_x = -1.1 omega_b)."""
    return resolve_params("weak", {})


@pytest.fixture
def fig4_params():
    """Polariton parameter set at the optimal detuning, calibrated drive."""
    return resolve_params("strong", {})


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for key in sorted(ACCEPTANCE, key=lambda k: int(k.split()[0])):
            ok, detail = ACCEPTANCE[key]
            terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  criterion {key}: {detail}")
