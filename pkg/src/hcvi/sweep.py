"""Sweep candidate cluster counts and pick the one with the lowest index."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .baselines import baseline_indices
from .geometry import as_points, pairwise_ball_distances
from .granulation import Granulation
from .index import IndexReport, assign_balls, canonical_labels, hcvi_for_l, normalize_scores

CLUSTERERS = ("kmeans-on-balls", "kmeans-on-points", "external-labels")


class SweepBoundError(ValueError):
    pass


def _first_appearance(labels: np.ndarray) -> np.ndarray:
    _, first = np.unique(labels, return_index=True)
    order = labels[np.sort(first)]
    remap = np.empty(order.max() + 1, dtype=np.int64)
    remap[order] = np.arange(order.size)
    return remap[labels]


def _lloyd(items, weights, centers, max_iter):
    labels = None
    for _ in range(max_iter):
        d2 = ((items[:, None, :] - centers[None, :, :]) ** 2).sum(axis=2)
        new = np.argmin(d2, axis=1)
        if labels is not None and np.array_equal(new, labels):
            break
        labels = new
        for c in range(centers.shape[0]):
            mine = labels == c
            if mine.any():
                centers[c] = np.average(items[mine], axis=0, weights=weights[mine])
            else:
                # reseed an empty cluster at the worst-served item
                own = d2[np.arange(items.shape[0]), labels]
                far = int(np.argmax(own))
                centers[c] = items[far]
                labels[far] = c
    d2 = ((items[:, None, :] - centers[None, :, :]) ** 2).sum(axis=2)
    labels = np.argmin(d2, axis=1)
    cost = float((weights * d2[np.arange(items.shape[0]), labels]).sum())
    return labels, cost


def kmeans(items, l: int, seed: int = 0, restarts: int = 10, weights=None,
           max_iter: int = 100) -> np.ndarray:
    """Weighted Lloyd's k-means, best of ``restarts`` by weighted inertia.

    Each restart picks its first center at random, then greedily adds the item
    farthest from the centers chosen so far. Restart ``r`` draws from
    ``(seed + r, l)``. Labels are numbered by first appearance.
    """
    items = as_points(items)
    n = items.shape[0]
    if not 1 <= l <= n:
        raise ValueError(f"cannot form {l} clusters from {n} items")
    if restarts < 1:
        raise ValueError("restarts must be >= 1")
    weights = np.ones(n) if weights is None else np.asarray(weights, dtype=float)

    best, best_cost = None, math.inf
    for r in range(restarts):
        rng = np.random.default_rng([(seed + r) % 2**64, l])
        chosen = [int(rng.integers(n))]
        nearest = ((items - items[chosen[0]]) ** 2).sum(axis=1)
        while len(chosen) < l:
            nxt = int(np.argmax(nearest))
            chosen.append(nxt)
            nearest = np.minimum(nearest, ((items - items[nxt]) ** 2).sum(axis=1))
        labels, cost = _lloyd(items, weights, items[chosen].copy(), max_iter)
        if cost < best_cost:
            best, best_cost = labels, cost
    return _first_appearance(best)


@dataclass(frozen=True)
class SweepConfig:
    clusterer: str = "kmeans-on-balls"
    l_min: int = 2
    l_max_override: int | None = None
    seed: int = 0
    restarts: int = 10
    external_labels: tuple = ()  # per-point label arrays, one per candidate clustering

    def __post_init__(self):
        if self.clusterer not in CLUSTERERS:
            raise ValueError(f"unknown clusterer {self.clusterer!r}; choose from {CLUSTERERS}")
        if self.l_min < 2:
            raise ValueError("l_min must be >= 2")
        if self.l_max_override is not None and self.l_max_override < self.l_min:
            raise ValueError("l_max must be >= l_min")
        if self.restarts < 1:
            raise ValueError("restarts must be >= 1")
        if self.clusterer == "external-labels" and not self.external_labels:
            raise ValueError("external-labels mode needs at least one labelling")


@dataclass(frozen=True)
class SweepRow:
    l: int
    avg_hcvi: float
    normalized: float | None
    valid: bool
    silhouette: float | None = None
    davies_bouldin: float | None = None
    calinski_harabasz: float | None = None
    report: IndexReport | None = field(default=None, repr=False, compare=False)
    point_labels: np.ndarray | None = field(default=None, repr=False, compare=False)


@dataclass(frozen=True)
class SweepReport:
    rows: list[SweepRow]
    optimal_l: int
    m: int
    l_min: int
    l_max: int
    l_max_override: int | None = None

    def row(self, l: int) -> SweepRow:
        for r in self.rows:
            if r.l == l:
                return r
        raise KeyError(l)


def sweep_bounds(m: int, config: SweepConfig) -> tuple[int, int]:
    if config.l_max_override is not None:
        return config.l_min, config.l_max_override
    l_max = math.isqrt(m)
    if l_max < 2:
        raise SweepBoundError(
            f"only {m} hyper-balls survive, so floor(sqrt(m)) < 2; "
            "lower the balance-degree threshold fraction to get more balls"
        )
    if l_max < config.l_min:
        raise SweepBoundError(f"l_min={config.l_min} exceeds floor(sqrt(m))={l_max}")
    return config.l_min, l_max


def cluster_points(granulation: Granulation, l: int, config: SweepConfig) -> np.ndarray:
    """Point labels for ``l`` clusters; points of noise balls get -1."""
    labels = np.full(granulation.n_points, -1, dtype=np.int64)
    if config.clusterer == "kmeans-on-balls":
        centers = np.stack([b.center for b in granulation.balls])
        sizes = np.array([b.size for b in granulation.balls], dtype=float)
        ball_labels = kmeans(centers, l, config.seed, config.restarts, weights=sizes)
        for b, lab in zip(granulation.balls, ball_labels):
            labels[b.member_ids] = lab
    elif config.clusterer == "kmeans-on-points":
        kept = granulation.kept_point_ids()
        labels[kept] = kmeans(granulation.points[kept], l, config.seed, config.restarts)
    else:
        raise ValueError(f"{config.clusterer} does not generate labels")
    return labels


def _baselines(points, labels):
    keep = labels >= 0
    if np.unique(labels[keep]).size < 2:
        return None, None, None
    return baseline_indices(points, labels)


def score_labels(granulation: Granulation, point_labels, l: int, distances=None) -> SweepRow:
    clustering = assign_balls(granulation, point_labels, l)
    report = hcvi_for_l(granulation, clustering, distances)
    sil, db, ch = _baselines(granulation.points, clustering.point_labels)
    return SweepRow(l, report.avg_hcvi, None, report.valid, sil, db, ch, report,
                    clustering.point_labels)


def run_sweep(granulation: Granulation, dataset=None,
              config: SweepConfig = SweepConfig()) -> SweepReport:
    if dataset is not None and as_points(dataset).shape != granulation.points.shape:
        raise ValueError("dataset does not match the granulation")
    m = granulation.m
    l_lo, l_hi = sweep_bounds(m, config)
    distances = pairwise_ball_distances(granulation.balls) if m else None

    candidates: dict[int, np.ndarray] = {}
    if config.clusterer == "external-labels":
        for labels in config.external_labels:
            labels = canonical_labels(labels)
            l = int(labels.max()) + 1
            if l in candidates:
                raise ValueError(f"two external labellings both have l={l}")
            if not l_lo <= l <= l_hi:
                raise SweepBoundError(
                    f"external labelling has l={l}, outside [{l_lo}, {l_hi}]; "
                    "set an explicit l_max to evaluate it"
                )
            candidates[l] = labels
    else:
        if l_hi > m:
            raise SweepBoundError(f"l_max={l_hi} exceeds the {m} available balls")
        for l in range(l_lo, l_hi + 1):
            candidates[l] = cluster_points(granulation, l, config)

    rows = [score_labels(granulation, candidates[l], l, distances) for l in sorted(candidates)]
    if not any(r.valid for r in rows):
        raise ValueError("every candidate clustering produced an invalid index")
    normalized, _ = normalize_scores({r.l: (r.avg_hcvi if r.valid else None) for r in rows})
    rows = [
        SweepRow(r.l, r.avg_hcvi, normalized.get(r.l), r.valid, r.silhouette,
                 r.davies_bouldin, r.calinski_harabasz, r.report, r.point_labels)
        for r in rows
    ]
    # ties go to the smaller l
    optimal = min(normalized, key=lambda l: (normalized[l], l))
    return SweepReport(rows, optimal, m, l_lo, l_hi, config.l_max_override)
