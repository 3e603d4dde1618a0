import itertools

import pytest

from decogauss import FULLERENE, EvolutionPoint

GAMMAS = (-3.0, 0.0, 3.0)
LAMBDAS = (0.0, 1e21, 1e22)
TIMES = (0.25e-6, 0.5e-6, 1e-6)
STANDARD_GRID = list(itertools.product(GAMMAS, LAMBDAS, TIMES))

# filled by test_acceptance, printed at the end of the session
ACCEPTANCE_LINES = []


@pytest.fixture
def fullerene():
    return FULLERENE


@pytest.fixture(params=STANDARD_GRID, ids=lambda v: f"g{v[0]:g}-L{v[1]:g}-t{v[2]:g}")
def grid_point(request):
    gamma, lam, t = request.param
    return FULLERENE.with_gamma(gamma), EvolutionPoint(t, lam)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
