import pytest

from mellin_kit import testlib

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def gauss():
    return testlib.gauss_log(1.0)


@pytest.fixture(scope="session")
def gauss0():
    return testlib.gauss_log(0.0)


@pytest.fixture(scope="session")
def bump():
    return testlib.bump_bl(2.0, 8, 1.0)


@pytest.fixture(scope="session")
def sob2():
    return testlib.sobolev_m(2, 1.0)


@pytest.fixture
def record_criterion():
    def record(number: int, passed: bool, detail: str):
        line = f"CRITERION {number}: {'PASS' if passed else 'FAIL'}  {detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
