import sys

import pytest

from pebbling.graph import build_blanusa, build_petersen
from pebbling.oracle import PebbleDistribution

# Unsolvable 22-pebble distributions from the published Proposition.
B1_WITNESS = "10:15,1:1,7:1,12:1,13:1,14:1,15:1,16:1"
B2_WITNESS = "10:15,3:1,4:1,12:1,13:1,15:1,16:1,17:1"
B1_REPRESENTATIVES = [4, 0, 1, 9, 10]
B2_REPRESENTATIVES = [0, 6, 8, 2, 3, 7]


@pytest.fixture(scope="session")
def b1():
    return build_blanusa(1)


@pytest.fixture(scope="session")
def b2():
    return build_blanusa(2)


@pytest.fixture(scope="session")
def petersen():
    return build_petersen()


@pytest.fixture(scope="session")
def b1_witness():
    return PebbleDistribution.from_string(18, B1_WITNESS)


@pytest.fixture(scope="session")
def b2_witness():
    return PebbleDistribution.from_string(18, B2_WITNESS)


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    RESULTS = getattr(module, "RESULTS", None)
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(RESULTS):
        ok, detail = RESULTS[k]
        terminalreporter.write_line(f"criterion {k}: {'PASS' if ok else 'FAIL'}  {detail}")
