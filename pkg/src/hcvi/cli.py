"""Command line entry point: ``hcvi {granulate,evaluate,sweep,synth}``."""

from __future__ import annotations

import argparse
import json
import sys
import time

import numpy as np

from .granulation import GranulationConfig, granulate
from .index import assign_balls, canonical_labels, hcvi_for_l
from .io import (Blobs, Noise, Rings, RunResult, balls_json, emit_result, generate_synthetic,
                 granulation_summary, load_csv, load_labels, write_csv)
from .sweep import CLUSTERERS, SweepConfig, run_sweep


def _add_data_args(p):
    p.add_argument("--input", required=True, help="comma-separated numeric data file")
    p.add_argument("--has-header", action="store_true", help="first row is a header")
    p.add_argument("--label-column", type=int, default=None,
                   help="0-based column holding integer labels (removed from the features)")
    p.add_argument("--bd-threshold-fraction", type=float, default=0.05,
                   help="balance-degree stop threshold as a fraction of the root radius")
    p.add_argument("--noise-min-points", type=int, default=4)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output", default=None, help="write the result here instead of stdout")
    p.add_argument("--no-timings", action="store_true", help="omit wall-clock timings")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hcvi", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("granulate", help="split a dataset into hyper-balls and emit them as json")
    _add_data_args(p)

    p = sub.add_parser("evaluate", help="score one labelling of the data")
    _add_data_args(p)
    p.add_argument("--labels", default=None, help="sidecar label file, one integer per line")

    p = sub.add_parser("sweep", help="score l = 2..floor(sqrt(m)) and pick the best l")
    _add_data_args(p)
    p.add_argument("--labels", action="append", default=[],
                   help="label file for external-labels mode (repeatable, one per l)")
    p.add_argument("--l-max", type=int, default=None, help="override the floor(sqrt(m)) bound")
    p.add_argument("--clusterer", choices=CLUSTERERS, default="kmeans-on-balls")
    p.add_argument("--restarts", type=int, default=10)
    p.add_argument("--format", choices=("text", "json", "csv-curve"), default="text")

    p = sub.add_parser("synth", help="write a labelled synthetic fixture as csv")
    p.add_argument("--kind", choices=("blobs", "rings"), default="blobs")
    p.add_argument("--k", type=int, default=4)
    p.add_argument("--n-per", type=int, default=125)
    p.add_argument("--spread", type=float, default=1.0)
    p.add_argument("--separation", type=float, default=10.0)
    p.add_argument("--dim", type=int, default=2)
    p.add_argument("--radii", type=float, nargs="+", default=[1.0, 3.0])
    p.add_argument("--jitter", type=float, default=0.05)
    p.add_argument("--noise-fraction", type=float, default=0.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output", required=True)
    return parser


def _config_echo(args) -> dict:
    return {k: v for k, v in sorted(vars(args).items()) if k not in ("output", "no_timings")}


def _load(args):
    data = load_csv(args.input, args.has_header, args.label_column)
    config = GranulationConfig(args.bd_threshold_fraction, args.noise_min_points, seed=args.seed)
    return data, config


def _label_file(path, n):
    labels = load_labels(path)
    if labels.shape[0] != n:
        raise ValueError(f"{path}: {labels.shape[0]} labels for {n} data rows")
    return labels


def _write(text, args):
    if args.output:
        emit_path = args.output
        with open(emit_path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_granulate(args) -> int:
    t0 = time.perf_counter()
    data, config = _load(args)
    g = granulate(data.points, config)
    out = {"config": _config_echo(args), "granulation": granulation_summary(g),
           "balls": balls_json(g)}
    if not args.no_timings:
        out["timings"] = {"granulate_s": time.perf_counter() - t0}
    _write(json.dumps(out, indent=2) + "\n", args)
    return 0


def cmd_evaluate(args) -> int:
    t0 = time.perf_counter()
    data, config = _load(args)
    if args.labels:
        labels = _label_file(args.labels, data.points.shape[0])
    elif data.labels is not None:
        labels = data.labels
    else:
        raise ValueError("evaluate needs --labels or --label-column")
    g = granulate(data.points, config)
    labels = canonical_labels(labels)
    clustering = assign_balls(g, labels, int(labels.max()) + 1)
    report = hcvi_for_l(g, clustering)
    out = {
        "config": _config_echo(args),
        "granulation": granulation_summary(g),
        "l": clustering.l,
        "valid": report.valid,
        "empty_clusters": clustering.empty_clusters,
        "avg_hcvi": report.avg_hcvi if report.valid else None,
        "clusters": [{"cluster": c.cluster, "com": c.com, "sep": c.sep, "hcvi": c.hcvi}
                     for c in report.per_cluster],
    }
    if not args.no_timings:
        out["timings"] = {"total_s": time.perf_counter() - t0}
    _write(json.dumps(out, indent=2) + "\n", args)
    return 0


def _text_report(result: RunResult) -> str:
    g, s = result.granulation, result.sweep
    lines = [
        f"points: {g.n_points}  balls: {g.m}  noise balls: {len(g.noise_balls)}  "
        f"threshold: {g.threshold:.6g}",
        f"sweep l = {s.l_min}..{s.l_max}" + (" (override)" if s.l_max_override else ""),
        f"{'l':>3}  {'avgHCVI':>12}  {'normalized':>10}  {'silhouette':>10}  {'DB':>8}  {'CH':>10}",
    ]
    fmt = lambda v, spec: format(v, spec) if v is not None and np.isfinite(v) else "-"
    for r in s.rows:
        lines.append(
            f"{r.l:>3}  {fmt(r.avg_hcvi, '12.6g')}  {fmt(r.normalized, '10.4f')}  "
            f"{fmt(r.silhouette, '10.4f')}  {fmt(r.davies_bouldin, '8.4f')}  "
            f"{fmt(r.calinski_harabasz, '10.4g')}"
        )
    lines.append(f"optimal_l = {s.optimal_l}")
    return "\n".join(lines) + "\n"


def cmd_sweep(args) -> int:
    t0 = time.perf_counter()
    data, config = _load(args)
    n = data.points.shape[0]
    external = tuple(_label_file(p, n) for p in args.labels)
    if args.clusterer == "external-labels" and not external:
        if data.labels is None:
            raise ValueError("external-labels mode needs --labels or --label-column")
        external = (data.labels,)
    t1 = time.perf_counter()
    g = granulate(data.points, config)
    t2 = time.perf_counter()
    sweep_config = SweepConfig(args.clusterer, 2, args.l_max, args.seed, args.restarts,
                               external if args.clusterer == "external-labels" else ())
    report = run_sweep(g, None, sweep_config)
    t3 = time.perf_counter()
    timings = {} if args.no_timings else {
        "load_s": t1 - t0, "granulate_s": t2 - t1, "sweep_s": t3 - t2, "total_s": t3 - t0}
    result = RunResult(_config_echo(args), g, report, timings)
    if args.format == "text":
        _write(_text_report(result), args)
    else:
        _write(emit_result(result, args.format), args)
    return 0


def cmd_synth(args) -> int:
    if args.kind == "blobs":
        spec = Blobs(args.k, args.n_per, args.spread, args.separation, args.dim)
    else:
        spec = Rings(args.n_per, tuple(args.radii), args.jitter)
    noise = Noise(args.noise_fraction) if args.noise_fraction else None
    data = generate_synthetic(spec, args.seed, noise)
    write_csv(data, args.output)
    return 0


COMMANDS = {"granulate": cmd_granulate, "evaluate": cmd_evaluate,
            "sweep": cmd_sweep, "synth": cmd_synth}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (ValueError, OSError) as exc:
        print(f"hcvi: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
