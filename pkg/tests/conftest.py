import os
import sys

sys.path.insert(0, os.path.dirname(__file__))

import pytest

from esmerge import kernels
from esmerge.logic import Vocabulary


@pytest.fixture
def pq():
    return Vocabulary(("p", "q"))


@pytest.fixture(params=["compiled", "python"])
def backend(request):
    if request.param == "compiled" and not kernels.COMPILED_AVAILABLE:
        pytest.skip("compiled kernels not built")
    with kernels.using_backend(request.param):
        yield request.param


def pytest_terminal_summary(terminalreporter):
    from acceptance_log import LINES

    if LINES:
        terminalreporter.section("acceptance criteria")
        for line in LINES:
            terminalreporter.write_line(line)
