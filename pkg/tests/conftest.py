import sys

import pytest
from hypothesis import HealthCheck, settings

from corings.algebra import field_algebra, group_algebra, matrix_algebra, FiniteGroup
from corings.linalg import QQ

settings.register_profile("default", max_examples=40, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture(scope="session")
def k():
    return field_algebra(QQ)


@pytest.fixture(scope="session")
def M2():
    return matrix_algebra(QQ, 2)


@pytest.fixture(scope="session")
def QC2():
    return group_algebra(QQ, FiniteGroup.cyclic(2))


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is not None and mod.LINES:
        terminalreporter.section("acceptance criteria")
        for line in mod.LINES:
            terminalreporter.write_line(line)
