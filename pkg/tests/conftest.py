"""Shared fixtures and the acceptance-criteria reporter."""
import numpy as np
import pytest

from hyperbm.geometry import origin
from hyperbm.sampling import SimulationPlan, first_passage, simulate_halfspace, simulate_radial

_ACCEPTANCE_LINES = []


def record_acceptance(name: str, ok: bool, detail: str = "") -> None:
    """Collect one pass/fail line per acceptance criterion for the summary."""
    _ACCEPTANCE_LINES.append((name, ok, detail))


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in _ACCEPTANCE_LINES:
        status = "PASS" if ok else "FAIL"
        line = f"{status}  {name}"
        if detail:
            line += f"  ({detail})"
        terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def warm_kernels():
    """Compile the Numba kernels once so runtime budgets measure compute only."""
    simulate_radial(SimulationPlan(n=3, horizon=0.1, dt=0.01, paths=4,
                                   master_seed=1, start_radius=1.0))
    simulate_halfspace(SimulationPlan(n=3, horizon=0.1, dt=0.01, paths=4,
                                      master_seed=1, start=origin(3)))
    first_passage(SimulationPlan(n=3, horizon=1.0, dt=0.01, paths=4,
                                 master_seed=1, start_radius=2.0),
                  1.0, stop_level=12.0)
    simulate_radial(SimulationPlan(n=5, horizon=0.1, dt=0.01, paths=4,
                                   master_seed=1, start_radius=1.0))
    return True
