import numpy as np
import pytest

from entedge import kernels
from entedge.imgio import GrayImage

_CRITERIA = []


@pytest.fixture(params=kernels.available_backends())
def backend(request):
    """Run the test once per available kernel backend."""
    with kernels.backend(request.param):
        yield request.param


def half_split(width=8, height=6, left=50, right=150):
    """Vertical two-value image: left half ``left``, right half ``right``."""
    px = np.full((height, width), right)
    px[:, : width // 2] = left
    return GrayImage(px)


@pytest.fixture
def half_image():
    return half_split()


@pytest.fixture
def criterion(request):
    """Record one acceptance criterion outcome for the terminal summary."""

    def record(number, name, ok, detail=""):
        _CRITERIA.append((number, name, bool(ok), detail))
        assert ok, f"criterion {number} ({name}) failed: {detail}"

    return record


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number, name, ok, detail in sorted(_CRITERIA, key=lambda c: c[0]):
        line = f"{'PASS' if ok else 'FAIL'}  {number:>2}. {name}"
        if detail:
            line += f"  [{detail}]"
        terminalreporter.write_line(line)
