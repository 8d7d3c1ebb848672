import numpy as np
import pytest

from tlsthermo.model import BathRates, InitialState, ModelParams

ACCEPTANCE_RESULTS = []


def report(name, passed, detail):
    """Record one acceptance line for the terminal summary and echo it immediately."""
    passed = bool(passed)
    ACCEPTANCE_RESULTS.append((name, passed, detail))
    print(f"{'PASS' if passed else 'FAIL'}  {name}: {detail}")
    return passed


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, passed, detail in ACCEPTANCE_RESULTS:
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  {name}: {detail}")


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture
def resonant_model():
    return ModelParams(omega0=1.0, Omega=1.0, epsilon=0.3)


@pytest.fixture
def default_rates():
    return BathRates(gamma_plus=0.1, gamma_minus=0.05, gamma_zero=0.05)


@pytest.fixture
def thermal_init(resonant_model):
    return InitialState.thermal(resonant_model, 1.0, "bare")
