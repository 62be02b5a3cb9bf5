"""Score the true two-ring labelling against competing labellings."""

import argparse

import numpy as np

from hcvi import Rings, assign_balls, generate_synthetic, granulate, hcvi_for_l


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--seeds", type=int, default=5)
    p.add_argument("--n", type=int, default=200)
    p.add_argument("--jitter", type=float, default=0.05)
    args = p.parse_args()

    print(f"{'seed':>4} {'m':>4} {'truth':>10} {'random-2':>10} {'angular-3':>10} {'angular-2':>10}")
    for seed in range(args.seeds):
        data = generate_synthetic(Rings(args.n, (1.0, 3.0), args.jitter), seed)
        g = granulate(data.points)
        angle = np.arctan2(data.points[:, 1], data.points[:, 0]) + np.pi
        candidates = [
            data.labels,
            np.random.default_rng(seed).integers(0, 2, data.labels.size),
            np.minimum((angle // (2 * np.pi / 3)).astype(int), 2),
            (angle >= np.pi).astype(int),
        ]
        scores = [hcvi_for_l(g, assign_balls(g, lab)).avg_hcvi for lab in candidates]
        print(f"{seed:>4} {g.m:>4} " + " ".join(f"{s:>10.4g}" for s in scores))


if __name__ == "__main__":
    main()
