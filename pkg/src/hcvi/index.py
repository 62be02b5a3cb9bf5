"""The hyper-ball cluster validity index.

Per cluster, compactness is the largest gap between two of its balls and
separation the smallest gap to a ball of another cluster; the index is their
ratio averaged over clusters, so lower is better. Pairs of overlapping balls
carry no gap, which is where the fallbacks come in:

* compactness: largest non-overlapping intra pair, else the global intra
  fallback, else the global inter fallback;
* separation: smallest non-overlapping cross pair, else the global inter
  fallback, else the dataset diameter.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .geometry import DistanceMatrix, pairwise_ball_distances
from .granulation import Granulation

SEP_FLOOR = 1e-12  # relative to the dataset diameter


@dataclass(frozen=True, eq=False)
class Clustering:
    """Cluster labels for the balls of a granulation.

    A ball label of -1 marks a ball that belongs to no cluster (its members
    were all labelled as noise); such balls are left out of the index.
    """

    l: int
    ball_labels: np.ndarray
    point_labels: np.ndarray | None = None

    def members(self, cluster_id: int) -> np.ndarray:
        if not 0 <= cluster_id < self.l:
            raise ValueError(f"unknown cluster id {cluster_id} (l={self.l})")
        return np.flatnonzero(self.ball_labels == cluster_id)

    @property
    def empty_clusters(self) -> list[int]:
        counts = np.bincount(self.ball_labels[self.ball_labels >= 0], minlength=self.l)
        return [int(k) for k in np.flatnonzero(counts[: self.l] == 0)]

    @property
    def valid(self) -> bool:
        return self.l >= 2 and not self.empty_clusters


@dataclass(frozen=True)
class ClusterScore:
    cluster: int
    com: float
    sep: float
    hcvi: float


@dataclass(frozen=True)
class IndexReport:
    per_cluster: list[ClusterScore]
    avg_hcvi: float
    valid: bool
    intra_fallback: float | None = None
    inter_fallback: float | None = None

    @property
    def avg_inverse(self) -> float:
        """Mean of per-cluster sep/com, the reciprocal orientation of the index."""
        if not self.valid:
            return float("nan")
        return float(np.mean([c.sep / c.com for c in self.per_cluster]))


def canonical_labels(labels) -> np.ndarray:
    """Map the distinct non-negative labels onto 0..k-1 in sorted order; keep -1."""
    labels = np.asarray(labels, dtype=np.int64)
    out = np.full(labels.shape, -1, dtype=np.int64)
    keep = labels >= 0
    if keep.any():
        _, out[keep] = np.unique(labels[keep], return_inverse=True)
    return out


def assign_balls(granulation: Granulation, point_labels, l: int | None = None) -> Clustering:
    """Give each ball the majority label of its member points.

    Ties go to the smaller cluster id; members labelled -1 do not vote.
    """
    point_labels = np.asarray(point_labels, dtype=np.int64).reshape(-1)
    if point_labels.shape[0] != granulation.n_points:
        raise ValueError(
            f"got {point_labels.shape[0]} labels for {granulation.n_points} points"
        )
    if l is None:
        l = int(point_labels.max()) + 1 if point_labels.size else 0
    if l < 2:
        raise ValueError(f"need at least 2 clusters, got l={l}")
    if point_labels.max(initial=-1) >= l:
        raise ValueError(f"labels exceed cluster count l={l}")

    ball_labels = np.full(granulation.m, -1, dtype=np.int64)
    for i, ball in enumerate(granulation.balls):
        votes = point_labels[ball.member_ids]
        votes = votes[votes >= 0]
        if votes.size:
            ball_labels[i] = int(np.argmax(np.bincount(votes, minlength=l)))
    return Clustering(l, ball_labels, point_labels)


def _pair_mask(clustering: Clustering, distances: DistanceMatrix, same: bool) -> np.ndarray:
    lab = clustering.ball_labels
    assigned = lab >= 0
    both = assigned[:, None] & assigned[None, :]
    eq = lab[:, None] == lab[None, :]
    mask = both & (eq if same else ~eq) & ~distances.overlapping
    return np.triu(mask, k=1)


def intra_fallback(balls, clustering: Clustering, distances: DistanceMatrix) -> float | None:
    """Smallest non-overlapping same-cluster gap over all clusters."""
    vals = distances.values[_pair_mask(clustering, distances, same=True)]
    return float(vals.min()) if vals.size else None


def inter_fallback(balls, clustering: Clustering, distances: DistanceMatrix) -> float | None:
    """Smallest non-overlapping cross-cluster gap."""
    vals = distances.values[_pair_mask(clustering, distances, same=False)]
    return float(vals.min()) if vals.size else None


def compactness(cluster_id: int, clustering: Clustering, distances: DistanceMatrix,
                intra_fb: float | None) -> float | None:
    idx = clustering.members(cluster_id)
    if idx.size == 0:
        raise ValueError(f"cluster {cluster_id} owns no balls")
    sub = distances.values[np.ix_(idx, idx)]
    ok = np.triu(~distances.overlapping[np.ix_(idx, idx)], k=1)
    if ok.any():
        return float(sub[ok].max())
    return intra_fb


def separation(cluster_id: int, clustering: Clustering, distances: DistanceMatrix,
               inter_fb: float | None) -> float | None:
    idx = clustering.members(cluster_id)
    if idx.size == 0:
        raise ValueError(f"cluster {cluster_id} owns no balls")
    others = np.flatnonzero((clustering.ball_labels >= 0) & (clustering.ball_labels != cluster_id))
    sub = distances.values[np.ix_(idx, others)]
    ok = ~distances.overlapping[np.ix_(idx, others)]
    if ok.any():
        return float(sub[ok].min())
    return inter_fb


def hcvi_for_l(granulation: Granulation, clustering: Clustering,
               distances: DistanceMatrix | None = None) -> IndexReport:
    if clustering.l < 2:
        raise ValueError(f"need at least 2 clusters, got l={clustering.l}")
    if clustering.ball_labels.shape[0] != granulation.m:
        raise ValueError("clustering does not label every ball of the granulation")
    if not clustering.valid:
        return IndexReport([], float("nan"), False)
    if distances is None:
        distances = pairwise_ball_distances(granulation.balls)

    balls = granulation.balls
    intra_fb = intra_fallback(balls, clustering, distances)
    inter_fb = inter_fallback(balls, clustering, distances)
    diam = granulation.diameter

    scores = []
    valid = True
    for k in range(clustering.l):
        com = compactness(k, clustering, distances, intra_fb)
        if com is None:
            com = inter_fb
        sep = separation(k, clustering, distances, inter_fb)
        if sep is None and diam > 0:
            sep = diam
        if com is None or sep is None:
            valid = False
            break
        scores.append(ClusterScore(k, com, sep, com / max(sep, SEP_FLOOR * diam)))

    if not valid:
        return IndexReport([], float("nan"), False, intra_fb, inter_fb)
    avg = sum(s.hcvi for s in scores) / clustering.l
    return IndexReport(scores, avg, True, intra_fb, inter_fb)


def normalize_scores(scores: dict[int, float | None]) -> tuple[dict[int, float], list[int]]:
    """Divide every valid score by the largest one.

    Entries that are None, NaN or non-positive are invalid; they are left out
    of the result and their keys returned separately.
    """
    good = {l: float(v) for l, v in scores.items()
            if v is not None and np.isfinite(v) and v > 0}
    invalid = sorted(l for l in scores if l not in good)
    if not good:
        raise ValueError("no valid scores to normalise")
    top = max(good.values())
    return {l: v / top for l, v in sorted(good.items())}, invalid
