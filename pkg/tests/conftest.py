import os

import pytest
from hypothesis import HealthCheck, settings

from lenslab.oracle import all_lenses, sweep_family
from lenslab.seeds import builtin_seeds

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("thorough", max_examples=500, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture(scope="session")
def seeds():
    return builtin_seeds()


@pytest.fixture(scope="session")
def family():
    return sweep_family()


@pytest.fixture(scope="session")
def sweep(family):
    """Every lens between members of the sweep family, keyed by (source, target) label."""
    return {(A.label, B.label): all_lenses(A, B) for A in family for B in family}


@pytest.fixture(scope="session")
def all_swept(sweep):
    return [l for ls in sweep.values() for l in ls]


def pytest_terminal_summary(terminalreporter):
    """One line per acceptance criterion, in order."""
    rows = []
    for outcome in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(outcome, []):
            nodeid = getattr(rep, "nodeid", "")
            if "test_acceptance.py::test_criterion_" not in nodeid or rep.when != "call" and outcome == "passed":
                continue
            name = nodeid.split("::")[-1]
            num = int(name.split("_")[2])
            rows.append((num, name, "PASS" if outcome == "passed" else "FAIL"))
    if not rows:
        return
    terminalreporter.section("acceptance criteria")
    seen = set()
    for num, name, verdict in sorted(rows):
        if num in seen:
            continue
        seen.add(num)
        terminalreporter.write_line(f"criterion {num:2d}: {verdict}  {name}")
