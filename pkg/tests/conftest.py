import pytest
from hypothesis import HealthCheck, settings

from npcsource.dispersion import shipped_dispersion

settings.register_profile(
    "repo", deadline=None, derandomize=True, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("repo")

ACCEPTANCE_LINES: dict[int, str] = {}


@pytest.fixture(scope="session")
def slt():
    return shipped_dispersion("slt")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[k])
