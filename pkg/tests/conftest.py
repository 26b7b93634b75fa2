import pytest
from hypothesis import HealthCheck, settings

from wreathlab.group_core import bundled_group

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def groups():
    return {name: bundled_group(name) for name in ("trivial", "z2", "z3", "z2xz2", "s3")}


@pytest.fixture(scope="session")
def z2(groups):
    return groups["z2"]


@pytest.fixture(scope="session")
def s3(groups):
    return groups["s3"]


@pytest.fixture(scope="session")
def trivial(groups):
    return groups["trivial"]


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
