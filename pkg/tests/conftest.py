from __future__ import annotations

import sys

import pytest

from mcinv import kernels
from mcinv.lie import sl_n_chevalley
from mcinv.multicurrent import MulticurrentAlgebra
from mcinv.staircase import from_box


@pytest.fixture(scope="session")
def sl2():
    return sl_n_chevalley(2)


@pytest.fixture(scope="session")
def sl3():
    return sl_n_chevalley(3)


@pytest.fixture(scope="session")
def mca_sl2_1(sl2):
    return MulticurrentAlgebra(sl2, from_box((1,)))


@pytest.fixture(scope="session")
def mca_sl2_11(sl2):
    return MulticurrentAlgebra(sl2, from_box((1, 1)))


@pytest.fixture(params=kernels.available_backends())
def each_backend(request):
    prev = kernels.use_backend(request.param)
    yield request.param
    kernels.use_backend(prev)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("tests.test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
