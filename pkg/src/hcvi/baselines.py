"""Silhouette, Davies-Bouldin and Calinski-Harabasz on point labels."""

from __future__ import annotations

import numpy as np

from .geometry import as_points


def _check(points, labels):
    pts = as_points(points)
    labels = np.asarray(labels, dtype=np.int64).reshape(-1)
    if labels.shape[0] != pts.shape[0]:
        raise ValueError(f"got {labels.shape[0]} labels for {pts.shape[0]} points")
    ids, labels = np.unique(labels, return_inverse=True)
    if ids.size < 2:
        raise ValueError("need at least 2 non-empty clusters")
    return pts, labels, ids.size


def silhouette(points, labels) -> float:
    """Mean silhouette; points in singleton clusters score 0."""
    pts, labels, k = _check(points, labels)
    n = pts.shape[0]
    counts = np.bincount(labels, minlength=k)
    onehot = np.zeros((n, k))
    onehot[np.arange(n), labels] = 1.0
    total = 0.0
    chunk = max(1, (1 << 22) // max(1, n * pts.shape[1]))
    for start in range(0, n, chunk):
        block = pts[start:start + chunk]
        dist = np.sqrt(((block[:, None, :] - pts[None, :, :]) ** 2).sum(axis=2))
        sums = dist @ onehot  # (b, k) distance totals per cluster
        own = labels[start:start + chunk]
        rows = np.arange(block.shape[0])
        own_n = counts[own]
        a = np.where(own_n > 1, sums[rows, own] / np.maximum(own_n - 1, 1), 0.0)
        mean_other = sums / counts
        mean_other[rows, own] = np.inf
        b = mean_other.min(axis=1)
        denom = np.maximum(a, b)
        s = np.where((own_n > 1) & (denom > 0), (b - a) / np.where(denom > 0, denom, 1.0), 0.0)
        total += float(s.sum())
    return total / n


def davies_bouldin(points, labels) -> float:
    pts, labels, k = _check(points, labels)
    centroids = np.stack([pts[labels == c].mean(axis=0) for c in range(k)])
    scatter = np.array([
        np.sqrt(((pts[labels == c] - centroids[c]) ** 2).sum(axis=1)).mean() for c in range(k)
    ])
    cdist = np.sqrt(((centroids[:, None, :] - centroids[None, :, :]) ** 2).sum(axis=2))
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = (scatter[:, None] + scatter[None, :]) / cdist
    # coincident centroids contribute nothing rather than infinity
    ratio[~np.isfinite(ratio)] = 0.0
    np.fill_diagonal(ratio, 0.0)
    return float(ratio.max(axis=1).mean())


def calinski_harabasz(points, labels) -> float:
    pts, labels, k = _check(points, labels)
    n = pts.shape[0]
    mean = pts.mean(axis=0)
    between = within = 0.0
    for c in range(k):
        members = pts[labels == c]
        centroid = members.mean(axis=0)
        between += members.shape[0] * float(((centroid - mean) ** 2).sum())
        within += float(((members - centroid) ** 2).sum())
    if within == 0.0:
        return 1.0  # same convention as scikit-learn
    return (between / (k - 1)) / (within / (n - k))


def baseline_indices(points, labels) -> tuple[float, float, float]:
    """(silhouette, davies_bouldin, calinski_harabasz), ignoring points labelled -1."""
    pts = as_points(points)
    labels = np.asarray(labels, dtype=np.int64).reshape(-1)
    keep = labels >= 0
    pts, labels = pts[keep], labels[keep]
    return silhouette(pts, labels), davies_bouldin(pts, labels), calinski_harabasz(pts, labels)
