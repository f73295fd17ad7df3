import math

import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from graphrecon.datagen import sample_points
from graphrecon.geometry import EmbeddedGraph

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

seeds = st.integers(0, 2**32 - 1)
angles = st.floats(0.0, 2 * math.pi, allow_nan=False)


def unit(angle: float) -> tuple[float, float]:
    return (math.cos(angle), math.sin(angle))


def random_graph(n: int, seed: int, p: float = 0.4, dim: int = 2) -> EmbeddedGraph:
    """General-position points with an arbitrary (not necessarily plane) edge set."""
    pts = sample_points(n, seed, dim)
    rng = np.random.default_rng([seed, 1])
    edges = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
    return EmbeddedGraph(pts, edges)


@st.composite
def graphs(draw, min_n=1, max_n=10, dim=2):
    n = draw(st.integers(min_n, max_n))
    p = draw(st.sampled_from([0.0, 0.2, 0.5, 1.0]))
    return random_graph(n, draw(seeds), p, dim)


# --- acceptance summary ----------------------------------------------------

_acceptance: dict[int, tuple[str, str]] = {}


def pytest_runtest_logreport(report):
    marker = getattr(report, "acceptance", None)
    if marker is None:
        return
    num, title = marker
    if report.when == "call" or report.outcome != "passed":
        prev = _acceptance.get(num, (title, "PASS"))[1]
        status = "PASS" if report.passed and prev == "PASS" else "FAIL"
        _acceptance[num] = (title, status)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    marker = item.get_closest_marker("acceptance")
    if marker is not None:
        outcome.get_result().acceptance = tuple(marker.args)


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_acceptance):
        title, status = _acceptance[num]
        terminalreporter.write_line(f"criterion {num}: {status}  {title}")
