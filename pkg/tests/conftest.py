import os

import pytest

from holonomic import VarTable, WeylIdeal, parse_operator


def ops(ring, *texts):
    return [parse_operator(t, ring) for t in texts]


def ideal(ring, *texts):
    return WeylIdeal(ops(ring, *texts), ring)


@pytest.fixture
def r1():
    return VarTable.make(["x"])


@pytest.fixture
def r2():
    return VarTable.make(["x", "y"])


@pytest.fixture
def r2s():
    return VarTable.make(["x", "y"], (), ["s"])


def pytest_collection_modifyitems(config, items):
    if os.environ.get("HOLONOMIC_SKIP_SLOW"):
        skip = pytest.mark.skip(reason="HOLONOMIC_SKIP_SLOW is set")
        for item in items:
            if "slow" in item.keywords:
                item.add_marker(skip)


ACCEPTANCE_KEY = pytest.StashKey[list]()


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(ACCEPTANCE_KEY, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line)
