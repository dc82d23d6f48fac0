from functools import lru_cache

import pytest

from hyperderiv.liegen import build_fieldset, structure_table

ACCEPTANCE_LINES: dict[int, str] = {}


@lru_cache(maxsize=None)
def fieldset(g):
    return build_fieldset(g)


@lru_cache(maxsize=None)
def table(g):
    return structure_table(fieldset(g))


@pytest.fixture(scope="session")
def fs1():
    return fieldset(1)


@pytest.fixture(scope="session")
def fs2():
    return fieldset(2)


@pytest.fixture(scope="session")
def fs3():
    return fieldset(3)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[n])
