import numpy as np
import pytest

from qudit_lab.well import WellSpec, dipole_matrix, solve_bound_states

ACCEPTANCE_LINES: list[str] = []


def random_density_matrix(rng, dim=7, rank=None):
    rank = rank or dim
    g = rng.normal(size=(dim, rank)) + 1j * rng.normal(size=(dim, rank))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


@pytest.fixture(scope="session")
def states():
    return solve_bound_states(WellSpec())


@pytest.fixture(scope="session")
def dipole(states):
    return dipole_matrix(states)


@pytest.fixture(scope="session")
def energies(states):
    return [s.energy for s in states]


@pytest.fixture
def rng():
    return np.random.default_rng(20160710)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
