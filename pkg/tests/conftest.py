import pytest

from frontflux.similarity import PhysicalParams
from frontflux.validation import pde_reference_run

ACCEPTANCE = {}

PDE_CASES = {
    "n1_k0": PhysicalParams(1, 0),
    "n2_k05": PhysicalParams(2, 0.5),
}


@pytest.fixture(scope="session")
def pde_runs():
    """Reference PDE runs at nr = 800, shared by the PDE and acceptance tests."""
    return {name: pde_reference_run(phys) for name, phys in PDE_CASES.items()}


@pytest.fixture
def record_criterion():
    def record(label, passed, detail=""):
        ACCEPTANCE[label] = (bool(passed), detail)
        print(f"{'PASS' if passed else 'FAIL'} criterion {label}: {detail}")

    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for label in sorted(ACCEPTANCE, key=lambda s: int(s.split()[0])):
        passed, detail = ACCEPTANCE[label]
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'} {label}: {detail}")
