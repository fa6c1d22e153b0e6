import sys
from pathlib import Path

import numpy as np
import pytest
from hypothesis import strategies as st
from hypothesis.extra import numpy as hnp

sys.path.insert(0, str(Path(__file__).parent))

from floodga import CityGenotype  # noqa: E402


def cities(max_rows=6, max_cols=6):
    """Hypothesis strategy producing random CityGenotype values."""
    return st.tuples(st.integers(1, max_rows), st.integers(1, max_cols)).flatmap(
        lambda d: hnp.arrays(np.int8, (d[0], d[1], 7), elements=st.integers(0, 3))
    ).map(CityGenotype)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def random_city(rng, rows=6, cols=6):
    return CityGenotype(rng.integers(0, 4, size=(rows, cols, 7)))


_ACCEPTANCE = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(number, title): exit criterion of the build")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None or report.when not in ("setup", "call"):
        return
    key = marker.args[0]
    if report.when == "call" or report.failed:
        _ACCEPTANCE[key] = (marker.args[1], report.passed and report.when == "call")


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_ACCEPTANCE, key=int):
        title, ok = _ACCEPTANCE[key]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {key}. {title}")
