import pytest

from dirlab.sieve import build_sieve

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def sieve():
    return build_sieve(10**6)


@pytest.fixture(scope="session")
def small_sieve():
    return build_sieve(10**4)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
