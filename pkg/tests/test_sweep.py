import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hcvi.granulation import GranulationConfig, granulate
from hcvi.index import assign_balls, hcvi_for_l
from hcvi.io import Blobs, generate_synthetic
from hcvi.sweep import SweepBoundError, SweepConfig, kmeans, run_sweep


def _same_partition(a, b):
    a, b = np.asarray(a), np.asarray(b)
    pairs = set(zip(a.tolist(), b.tolist()))
    return len(pairs) == len(set(a.tolist())) == len(set(b.tolist()))


def test_kmeans_one_item_per_cluster(rng):
    items = rng.normal(size=(6, 2))
    labels = kmeans(items, 6, seed=3)
    assert sorted(labels.tolist()) == list(range(6))


def test_kmeans_recovers_two_blobs(rng):
    pts = np.vstack([rng.normal(0, 0.5, (40, 2)), rng.normal([20, 0], 0.5, (40, 2))])
    assert _same_partition(kmeans(pts, 2, seed=1), np.repeat([0, 1], 40))


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(1, 5), st.floats(0.5, 20.0))
def test_uniform_weights_match_unweighted(seed, l, w):
    rng = np.random.default_rng(seed)
    items = rng.normal(size=(25, 3))
    a = kmeans(items, l, seed=seed % 1000, restarts=3)
    b = kmeans(items, l, seed=seed % 1000, restarts=3, weights=np.full(25, w))
    assert np.array_equal(a, b)


def test_kmeans_deterministic_and_errors(rng):
    items = rng.normal(size=(30, 2))
    assert np.array_equal(kmeans(items, 4, seed=9), kmeans(items, 4, seed=9))
    with pytest.raises(ValueError):
        kmeans(items, 31)
    with pytest.raises(ValueError):
        kmeans(items, 0)


def test_kmeans_weights_pull_centers():
    # a heavy far item should get its own cluster rather than be absorbed
    items = np.array([[0.0], [1.0], [2.0], [10.0]])
    labels = kmeans(items, 2, weights=[1, 1, 1, 50])
    assert labels[3] != labels[0] and len(set(labels[:3].tolist())) == 1


@pytest.fixture(scope="module")
def four_blobs():
    data = generate_synthetic(Blobs(4, 125, 1.0, 10.0), seed=0)
    return data, granulate(data.points)


def test_run_sweep_recovers_four(four_blobs):
    _, g = four_blobs
    rep = run_sweep(g)
    assert rep.l_min == 2 and rep.l_max == math.isqrt(g.m)
    assert [r.l for r in rep.rows] == list(range(2, rep.l_max + 1))
    assert rep.optimal_l == 4
    valid = [r for r in rep.rows if r.valid]
    assert max(r.normalized for r in valid) == 1.0
    assert all(r.avg_hcvi > 0 and 0 < r.normalized <= 1 for r in valid)


def test_run_sweep_rows_match_direct_scoring(four_blobs):
    _, g = four_blobs
    rep = run_sweep(g, config=SweepConfig(seed=5))
    for row in rep.rows:
        direct = hcvi_for_l(g, assign_balls(g, row.point_labels, row.l))
        assert direct.avg_hcvi == row.avg_hcvi


def test_run_sweep_deterministic(four_blobs):
    data, g = four_blobs
    a = run_sweep(g, data.points, SweepConfig(seed=2))
    b = run_sweep(granulate(data.points), data.points, SweepConfig(seed=2))
    assert a.rows == b.rows and a.optimal_l == b.optimal_l


def test_points_mode(four_blobs):
    _, g = four_blobs
    rep = run_sweep(g, config=SweepConfig("kmeans-on-points", restarts=3))
    assert rep.optimal_l == 4


def test_override_is_reported(four_blobs):
    _, g = four_blobs
    rep = run_sweep(g, config=SweepConfig(l_max_override=9, restarts=2))
    assert rep.l_max == 9 and rep.l_max_override == 9
    assert rep.rows[-1].l == 9


def test_single_external_row(four_blobs):
    data, g = four_blobs
    rep = run_sweep(g, config=SweepConfig("external-labels", external_labels=(data.labels,)))
    assert len(rep.rows) == 1 and rep.optimal_l == 4 and rep.rows[0].normalized == 1.0


def test_external_errors(four_blobs):
    data, g = four_blobs
    with pytest.raises(ValueError):
        SweepConfig("external-labels")
    with pytest.raises(ValueError):
        run_sweep(g, config=SweepConfig("external-labels",
                                        external_labels=(data.labels, data.labels)))
    too_many = np.arange(data.points.shape[0]) % 20
    with pytest.raises(SweepBoundError):
        run_sweep(g, config=SweepConfig("external-labels", external_labels=(too_many,)))


def test_bound_error_when_too_few_balls(rng):
    g = granulate(rng.normal(size=(50, 2)), GranulationConfig(1.0))
    assert g.m < 4
    with pytest.raises(SweepBoundError, match="threshold"):
        run_sweep(g)


def test_sweep_config_validation():
    with pytest.raises(ValueError):
        SweepConfig(clusterer="dbscan")
    with pytest.raises(ValueError):
        SweepConfig(l_min=1)
    with pytest.raises(ValueError):
        SweepConfig(l_max_override=1)


def test_baselines_recorded(four_blobs):
    _, g = four_blobs
    row = run_sweep(g, config=SweepConfig(restarts=2)).rows[2]
    assert row.l == 4
    assert row.silhouette > 0.7 and row.davies_bouldin < 0.6 and row.calinski_harabasz > 100
