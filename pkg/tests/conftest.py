import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from hcvi.geometry import diameter, fit_ball  # noqa: E402
from hcvi.granulation import Granulation  # noqa: E402

ACCEPTANCE_LINES: list[str] = []


def make_granulation(groups):
    """A Granulation whose balls are exactly the given point groups."""
    pts, balls, start = [], [], 0
    for g in groups:
        g = np.asarray(g, dtype=float)
        ids = np.arange(start, start + len(g))
        balls.append(fit_ball(g, ids))
        pts.append(g)
        start += len(g)
    pts = np.vstack(pts)
    return Granulation(balls, [], pts, 0.0, diameter(pts))


def random_instance(rng, m, l, dim=2):
    """Random balls (a few points each) with labels covering every cluster."""
    groups = []
    for _ in range(m):
        center = rng.uniform(-10, 10, dim)
        n = int(rng.integers(1, 6))
        groups.append(center + rng.normal(0, rng.uniform(0.1, 3.0), (n, dim)))
    g = make_granulation(groups)
    labels = np.concatenate([np.arange(l), rng.integers(0, l, m - l)])
    rng.shuffle(labels)
    return g, labels


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
