"""Dataset ingestion, synthetic fixtures and result serialisation."""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .granulation import Granulation
from .sweep import SweepReport


@dataclass(frozen=True, eq=False)
class Dataset:
    points: np.ndarray
    columns: list[str] | None = None
    source: str = ""
    labels: np.ndarray | None = None


def load_csv(path, has_header: bool = False, label_column: int | None = None) -> Dataset:
    """Read comma-separated numeric rows. Blank lines are skipped."""
    path = Path(path)
    with path.open(newline="") as fh:
        rows = [(i + 1, r) for i, r in enumerate(csv.reader(fh)) if any(c.strip() for c in r)]
    if not rows:
        raise ValueError(f"{path}: file is empty")
    header = None
    if has_header:
        header = [c.strip() for c in rows[0][1]]
        rows = rows[1:]
        if not rows:
            raise ValueError(f"{path}: header present but no data rows")

    width = len(rows[0][1])
    if header is not None and len(header) != width:
        raise ValueError(f"{path}: header has {len(header)} columns, data has {width}")
    if label_column is not None and not 0 <= label_column < width:
        raise ValueError(f"{path}: label column {label_column} out of range for {width} columns")

    values = np.empty((len(rows), width))
    for r, (lineno, row) in enumerate(rows):
        if len(row) != width:
            raise ValueError(f"{path}: line {lineno} has {len(row)} columns, expected {width}")
        for c, cell in enumerate(row):
            try:
                values[r, c] = float(cell)
            except ValueError:
                raise ValueError(
                    f"{path}: non-numeric value {cell!r} at line {lineno}, column {c + 1}"
                ) from None
    if not np.all(np.isfinite(values)):
        raise ValueError(f"{path}: non-finite values are not allowed")

    labels = None
    if label_column is not None:
        col = values[:, label_column]
        if not np.all(col == np.round(col)):
            raise ValueError(f"{path}: label column {label_column} holds non-integers")
        labels = col.astype(np.int64)
        values = np.delete(values, label_column, axis=1)
        if header is not None:
            header = header[:label_column] + header[label_column + 1:]
        if values.shape[1] == 0:
            raise ValueError(f"{path}: no feature columns left besides the labels")
    return Dataset(values, header, str(path), labels)


def load_labels(path) -> np.ndarray:
    """One integer per line, blank lines skipped."""
    path = Path(path)
    out = []
    for lineno, line in enumerate(path.read_text().splitlines(), start=1):
        if not line.strip():
            continue
        try:
            out.append(int(line.strip()))
        except ValueError:
            raise ValueError(f"{path}: line {lineno} is not an integer: {line!r}") from None
    if not out:
        raise ValueError(f"{path}: no labels")
    return np.array(out, dtype=np.int64)


@dataclass(frozen=True)
class Blobs:
    k: int
    n_per: int
    spread: float
    separation: float
    dim: int = 2


@dataclass(frozen=True)
class Rings:
    n: int  # points per ring
    radii: tuple[float, ...]
    jitter: float


@dataclass(frozen=True)
class Noise:
    fraction: float
    box: tuple[tuple[float, ...], tuple[float, ...]] | None = None  # (low, high); None = data box


def blob_centers(k: int, separation: float, dim: int) -> np.ndarray:
    """Centers on a square grid with neighbouring centers ``separation`` apart."""
    centers = np.zeros((k, dim))
    if dim == 1:
        centers[:, 0] = np.arange(k) * separation
        return centers
    cols = math.ceil(math.sqrt(k))
    for i in range(k):
        centers[i, 0] = (i % cols) * separation
        centers[i, 1] = (i // cols) * separation
    return centers


def generate_synthetic(spec, seed: int = 0, noise: Noise | None = None) -> Dataset:
    """Draw a labelled fixture. Noise points are labelled -1."""
    rng = np.random.default_rng(seed)
    if isinstance(spec, Blobs):
        if spec.k < 1 or spec.n_per < 1 or spec.dim < 1:
            raise ValueError("blobs need k >= 1, n_per >= 1 and dim >= 1")
        if spec.spread < 0 or spec.separation < 0:
            raise ValueError("spread and separation must be non-negative")
        centers = blob_centers(spec.k, spec.separation, spec.dim)
        labels = np.repeat(np.arange(spec.k), spec.n_per)
        points = centers[labels] + rng.normal(0.0, 1.0, (labels.size, spec.dim)) * spec.spread
        source = f"blobs(k={spec.k}, n_per={spec.n_per}, spread={spec.spread}, separation={spec.separation}, dim={spec.dim})"
    elif isinstance(spec, Rings):
        if spec.n < 1 or not spec.radii or min(spec.radii) <= 0 or spec.jitter < 0:
            raise ValueError("rings need n >= 1, positive radii and non-negative jitter")
        labels = np.repeat(np.arange(len(spec.radii)), spec.n)
        angle = rng.uniform(0.0, 2 * np.pi, labels.size)
        radius = np.asarray(spec.radii, dtype=float)[labels] + rng.normal(0.0, spec.jitter, labels.size)
        points = np.column_stack([radius * np.cos(angle), radius * np.sin(angle)])
        source = f"rings(n={spec.n}, radii={list(spec.radii)}, jitter={spec.jitter})"
    else:
        raise ValueError(f"unsupported fixture spec {spec!r}")

    if noise is not None and noise.fraction < 0:
        raise ValueError("noise fraction must be non-negative")
    if noise is not None and noise.fraction > 0:
        n_noise = int(round(noise.fraction * points.shape[0]))
        if noise.box is None:
            lo, hi = points.min(axis=0), points.max(axis=0)
            pad = 0.1 * (hi - lo)
            lo, hi = lo - pad, hi + pad
        else:
            lo, hi = (np.asarray(v, dtype=float) for v in noise.box)
        extra = rng.uniform(lo, hi, (n_noise, points.shape[1]))
        points = np.vstack([points, extra])
        labels = np.concatenate([labels, np.full(n_noise, -1)])
        source += f" + noise(fraction={noise.fraction})"
    return Dataset(points, None, source, labels.astype(np.int64))


def write_csv(dataset: Dataset, path) -> None:
    d = dataset.points.shape[1]
    header = [f"x{i}" for i in range(d)] + (["label"] if dataset.labels is not None else [])
    with Path(path).open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(header)
        for i, p in enumerate(dataset.points):
            row = [repr(float(v)) for v in p]
            if dataset.labels is not None:
                row.append(int(dataset.labels[i]))
            w.writerow(row)


@dataclass
class RunResult:
    config: dict
    granulation: Granulation
    sweep: SweepReport | None = None
    timings: dict = field(default_factory=dict)


def _num(x):
    if x is None:
        return None
    x = float(x)
    return x if math.isfinite(x) else None


def granulation_summary(g: Granulation) -> dict:
    return {
        "n_points": g.n_points,
        "m": g.m,
        "noise_balls": len(g.noise_balls),
        "noise_points": int(sum(b.size for b in g.noise_balls)),
        "threshold": g.threshold,
        "diameter": g.diameter,
    }


def balls_json(g: Granulation) -> list[dict]:
    return [
        {
            "center": [float(c) for c in b.center],
            "radius_max": b.radius_max,
            "radius_avg": b.radius_avg,
            "balance_degree": b.balance_degree,
            "members": [int(i) for i in b.member_ids],
            "noise": noise,
        }
        for noise, balls in ((False, g.balls), (True, g.noise_balls))
        for b in balls
    ]


def result_dict(result: RunResult) -> dict:
    out = {"config": result.config, "granulation": granulation_summary(result.granulation)}
    if result.sweep is not None:
        s = result.sweep
        out["sweep"] = {
            "m": s.m,
            "l_min": s.l_min,
            "l_max": s.l_max,
            "l_max_override": s.l_max_override,
            "optimal_l": s.optimal_l,
            "rows": [
                {
                    "l": r.l,
                    "avg_hcvi": _num(r.avg_hcvi),
                    "normalized_avg_hcvi": _num(r.normalized),
                    "valid": r.valid,
                    "clusters": [
                        {"cluster": c.cluster, "com": c.com, "sep": c.sep, "hcvi": c.hcvi}
                        for c in (r.report.per_cluster if r.report else [])
                    ],
                }
                for r in s.rows
            ],
        }
        out["baselines"] = [
            {
                "l": r.l,
                "silhouette": _num(r.silhouette),
                "davies_bouldin": _num(r.davies_bouldin),
                "calinski_harabasz": _num(r.calinski_harabasz),
            }
            for r in s.rows
        ]
    if result.timings:
        out["timings"] = result.timings
    return out


def emit_result(result: RunResult, fmt: str = "json", path=None) -> str:
    """Render as ``json`` or ``csv-curve``; also write to ``path`` when given."""
    if fmt == "json":
        text = json.dumps(result_dict(result), indent=2) + "\n"
    elif fmt == "csv-curve":
        if result.sweep is None:
            raise ValueError("csv-curve output needs a sweep")
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["l", "normalized_avg_hcvi", "avg_hcvi", "silhouette",
                    "davies_bouldin", "calinski_harabasz"])
        for r in result.sweep.rows:
            w.writerow([r.l] + ["" if v is None else repr(v) for v in (
                _num(r.normalized), _num(r.avg_hcvi), _num(r.silhouette),
                _num(r.davies_bouldin), _num(r.calinski_harabasz))])
        text = buf.getvalue()
    else:
        raise ValueError(f"unknown format {fmt!r}")
    if path is not None:
        try:
            Path(path).write_text(text)
        except OSError as exc:
            raise OSError(f"cannot write {path}: {exc.strerror}") from exc
    return text
