import os
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from dlcontrast.parser import parse_kb  # noqa: E402
from dlcontrast._accel import HAVE_NUMBA  # noqa: E402

FIXTURES = Path(__file__).parent / "fixtures"
BACKENDS = ["numba", "numpy"] if HAVE_NUMBA else ["numpy"]


def load(name):
    return parse_kb((FIXTURES / name).read_text())


@pytest.fixture
def krun():
    return load("krun.dlkb")


@pytest.fixture
def krun_disjoint():
    return load("krun_disjoint.dlkb")


@pytest.fixture(params=BACKENDS)
def backend(request, monkeypatch):
    monkeypatch.setenv("DLCONTRAST_BACKEND", request.param)
    return request.param


@pytest.fixture
def fixtures_dir():
    return FIXTURES


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not getattr(mod, "RESULTS", None):
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[n])
