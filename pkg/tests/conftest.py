import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from linkcent.graph import load_graph

FIXTURES = Path(__file__).parent.parent / "fixtures"

_acceptance_results: dict[str, str] = {}


@pytest.fixture(scope="session")
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture(scope="session")
def two_communities():
    """15-node benchmark graph: two fan communities joined through a middle node."""
    return load_graph(FIXTURES / "two_communities.txt")


@pytest.fixture(scope="session")
def triangle_chain():
    """Disconnected 6-node benchmark: a triangle plus a 3-node chain."""
    return load_graph(FIXTURES / "triangle_chain.txt")


def pytest_runtest_logreport(report):
    if report.when == "call" and "test_acceptance" in report.nodeid:
        name = report.nodeid.split("::")[-1]
        _acceptance_results[name] = report.outcome


def pytest_terminal_summary(terminalreporter):
    if not _acceptance_results:
        return
    terminalreporter.write_sep("-", "acceptance criteria")
    for name, outcome in sorted(_acceptance_results.items()):
        verdict = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"{name}: {verdict}")
