from __future__ import annotations

import pytest

from torext import fixtures

ACCEPTANCE: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.write_sep("=", "acceptance criteria")
        for line in ACCEPTANCE:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def H2():
    return fixtures.h2()


@pytest.fixture(scope="session")
def H3():
    return fixtures.h3()


@pytest.fixture(scope="session")
def C345():
    return fixtures.c345()


@pytest.fixture(scope="session")
def Q2():
    return fixtures.q2()
