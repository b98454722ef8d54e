import sys

import numpy as np
import pytest

from stmcirc.bound import reflection_budget
from stmcirc.filters import SynthesisSpec, junction_yc, synthesize_filter
from stmcirc.junction import REFERENCE_JUNCTION, center_frequency


@pytest.fixture(scope="session")
def ref():
    return REFERENCE_JUNCTION


@pytest.fixture(scope="session")
def budget():
    return reflection_budget(3.0, 20.0)


@pytest.fixture(scope="session")
def fc(ref):
    return center_frequency(ref)


@pytest.fixture(scope="session")
def anchored_filter(ref):
    return synthesize_filter(junction_yc(ref), SynthesisSpec(972e6, 1045e6, ref.z0))


@pytest.fixture(scope="session")
def band():
    return np.linspace(0.9e9, 1.1e9, 2001)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    if mod is None or not mod.REPORT:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.REPORT:
        terminalreporter.write_line(line)
