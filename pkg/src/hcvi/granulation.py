"""Coarse-to-fine granulation of a dataset into hyper-balls.

Starting from one ball over the whole dataset, any ball whose balance degree
exceeds the threshold is bisected with 2-means. Finished balls with too few
members are then dropped as noise.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

import numpy as np

from .geometry import HyperBall, as_points, diameter, fit_ball


@dataclass(frozen=True)
class GranulationConfig:
    bd_threshold_fraction: float = 0.05  # of the root ball's radius_max
    noise_min_points: int = 4
    max_kmeans_iterations: int = 100
    seed: int = 0

    def __post_init__(self):
        if not self.bd_threshold_fraction > 0:
            raise ValueError("bd_threshold_fraction must be positive")
        if self.noise_min_points < 1:
            raise ValueError("noise_min_points must be >= 1")
        if self.max_kmeans_iterations < 1:
            raise ValueError("max_kmeans_iterations must be >= 1")


@dataclass(frozen=True, eq=False)
class Granulation:
    balls: list[HyperBall]
    noise_balls: list[HyperBall]
    points: np.ndarray = field(repr=False)
    threshold: float
    diameter: float

    @property
    def m(self) -> int:
        return len(self.balls)

    @property
    def n_points(self) -> int:
        return int(self.points.shape[0])

    def kept_point_ids(self) -> np.ndarray:
        if not self.balls:
            return np.zeros(0, dtype=np.int64)
        return np.sort(np.concatenate([b.member_ids for b in self.balls]))


def _two_means(pts: np.ndarray, max_iter: int) -> np.ndarray | None:
    """Lloyd 2-means with farthest-pair seeding; returns side labels or None."""
    center = pts.mean(axis=0)
    first = int(np.argmax(((pts - center) ** 2).sum(axis=1)))
    second = int(np.argmax(((pts - pts[first]) ** 2).sum(axis=1)))
    centers = np.stack([pts[first], pts[second]])
    if np.array_equal(centers[0], centers[1]):
        return None

    labels = None
    for _ in range(max_iter):
        d2 = ((pts[:, None, :] - centers[None, :, :]) ** 2).sum(axis=2)
        # ties go to center 0
        new = (d2[:, 1] < d2[:, 0]).astype(np.int8)
        if labels is not None and np.array_equal(new, labels):
            break
        labels = new
        if labels.all() or not labels.any():
            return None
        centers = np.stack([pts[labels == 0].mean(axis=0), pts[labels == 1].mean(axis=0)])
    return labels


def bisect(ball: HyperBall, dataset, config: GranulationConfig = GranulationConfig()):
    """Split ``ball`` in two with 2-means.

    Returns a pair of child balls, or ``None`` when the members cannot be
    separated (all coincident).
    """
    if ball.size < 2:
        raise ValueError("cannot bisect a ball with fewer than 2 members")
    pts = as_points(dataset)[ball.member_ids]
    labels = _two_means(pts, config.max_kmeans_iterations)
    if labels is None:
        return None
    left = labels == 0
    return (
        fit_ball(pts[left], ball.member_ids[left]),
        fit_ball(pts[~left], ball.member_ids[~left]),
    )


def remove_noise(balls: list[HyperBall], noise_min_points: int = 4):
    kept = [b for b in balls if b.size >= noise_min_points]
    removed = [b for b in balls if b.size < noise_min_points]
    return kept, removed


def granulate(dataset, config: GranulationConfig = GranulationConfig()) -> Granulation:
    pts = as_points(dataset)
    if pts.shape[0] == 0:
        raise ValueError("dataset is empty")

    root = fit_ball(pts)
    threshold = config.bd_threshold_fraction * root.radius_max
    work = deque([root])
    final: list[HyperBall] = []
    while work:
        ball = work.popleft()
        children = None
        if ball.balance_degree > threshold and ball.size >= 2:
            children = bisect(ball, pts, config)
        if children is None:
            final.append(ball)
        else:
            work.extend(children)

    kept, removed = remove_noise(final, config.noise_min_points)
    return Granulation(kept, removed, pts, threshold, diameter(pts))
