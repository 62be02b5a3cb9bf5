"""Hyper-balls: construction from point sets and ball-to-ball distances."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


class DimensionMismatchError(ValueError):
    """Raised when point sets or balls do not share a dimension."""


@dataclass(frozen=True, eq=False)
class HyperBall:
    """A granule summarising a subset of points.

    ``balance_degree`` is ``radius_max - radius_avg``; it is small when the
    members fill the ball evenly.
    """

    member_ids: np.ndarray
    center: np.ndarray
    radius_max: float
    radius_avg: float
    balance_degree: float

    @property
    def size(self) -> int:
        return int(self.member_ids.shape[0])

    @property
    def dim(self) -> int:
        return int(self.center.shape[0])


@dataclass(frozen=True)
class BallDistance:
    value: float
    overlapping: bool


@dataclass(frozen=True, eq=False)
class DistanceMatrix:
    """Pairwise ball distances; ``overlapping[i, j]`` iff ``values[i, j] <= 0``."""

    values: np.ndarray
    overlapping: np.ndarray

    def __getitem__(self, ij: tuple[int, int]) -> BallDistance:
        i, j = ij
        return BallDistance(float(self.values[i, j]), bool(self.overlapping[i, j]))

    def __len__(self) -> int:
        return self.values.shape[0]


def as_points(points) -> np.ndarray:
    """Coerce to a finite ``(n, d)`` float array."""
    try:
        arr = np.asarray(points, dtype=float)
    except ValueError as exc:
        raise DimensionMismatchError(f"points do not share a dimension: {exc}") from None
    if arr.ndim == 1:
        arr = arr[:, None] if arr.size else arr.reshape(0, 1)
    if arr.ndim != 2:
        raise DimensionMismatchError(f"expected a 2-d point array, got shape {arr.shape}")
    if arr.shape[1] < 1:
        raise DimensionMismatchError("points must have at least one coordinate")
    if not np.all(np.isfinite(arr)):
        raise ValueError("points contain non-finite coordinates")
    return arr


def fit_ball(points, ids=None) -> HyperBall:
    """Build the hyper-ball of ``points``.

    The center is the mean of the points, ``radius_max`` the largest and
    ``radius_avg`` the mean member-to-center distance.
    """
    pts = as_points(points)
    n = pts.shape[0]
    if n == 0:
        raise ValueError("cannot fit a ball to an empty point set")
    if ids is None:
        ids = np.arange(n)
    ids = np.asarray(ids, dtype=np.int64).reshape(-1)
    if ids.shape[0] != n:
        raise ValueError(f"got {ids.shape[0]} ids for {n} points")

    center = pts.mean(axis=0)
    dists = np.sqrt(((pts - center) ** 2).sum(axis=1))
    r_max = float(dists.max())
    r_avg = float(dists.mean())
    # the mean can exceed the max by an ulp when all distances are equal
    r_avg = min(r_avg, r_max)
    ids.flags.writeable = False
    center.flags.writeable = False
    return HyperBall(ids, center, r_max, r_avg, r_max - r_avg)


def ball_distance(a: HyperBall, b: HyperBall) -> BallDistance:
    """Center distance minus both radii. Non-positive means the balls overlap."""
    if a.dim != b.dim:
        raise DimensionMismatchError(f"ball dimensions differ: {a.dim} vs {b.dim}")
    gap = float(np.sqrt(((a.center - b.center) ** 2).sum()))
    value = gap - (a.radius_max + b.radius_max)
    return BallDistance(value, value <= 0)


def pairwise_ball_distances(balls: list[HyperBall]) -> DistanceMatrix:
    if not balls:
        raise ValueError("need at least one ball")
    dims = {b.dim for b in balls}
    if len(dims) != 1:
        raise DimensionMismatchError(f"balls have mixed dimensions {sorted(dims)}")
    centers = np.stack([b.center for b in balls])
    radii = np.array([b.radius_max for b in balls])
    gaps = np.sqrt(((centers[:, None, :] - centers[None, :, :]) ** 2).sum(axis=2))
    values = gaps - (radii[:, None] + radii[None, :])
    return DistanceMatrix(values, values <= 0)


def diameter(points) -> float:
    """Largest pairwise 2-norm distance, computed in row blocks."""
    pts = as_points(points)
    n, d = pts.shape
    chunk = max(1, (1 << 22) // max(1, n * d))
    best = 0.0
    for start in range(0, pts.shape[0], chunk):
        block = pts[start:start + chunk]
        d2 = ((block[:, None, :] - pts[None, :, :]) ** 2).sum(axis=2)
        best = max(best, float(d2.max()))
    return float(np.sqrt(best))
