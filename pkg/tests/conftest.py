import sys
import numpy as np
import pytest

from photonsub import Scenario, build_basis
from photonsub.scenario import default_grid


@pytest.fixture(scope="session")
def scenario():
    return Scenario()


@pytest.fixture(scope="session")
def basis40(scenario):
    """40 supermodes for K = 9 on a grid that also spans a 5 nm filter."""
    tau = scenario.tau_s(9.0)
    grid = default_grid(scenario.center, tau, 40, filter_fwhm=scenario.to_omega(5.0))
    return build_basis(tau, scenario.center, 40, grid)


@pytest.fixture
def rng():
    return np.random.default_rng(20240917)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[number])
