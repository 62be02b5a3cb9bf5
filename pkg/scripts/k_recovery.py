"""Optimal-k recovery on seeded 4-blob datasets, with and without background noise.

    python scripts/k_recovery.py --seeds 10 --noise 0.05
"""

import argparse
import time

from hcvi import Blobs, Noise, SweepConfig, generate_synthetic, granulate, run_sweep
from hcvi.granulation import GranulationConfig


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--seeds", type=int, default=5)
    p.add_argument("--k", type=int, default=4)
    p.add_argument("--n-per", type=int, default=125)
    p.add_argument("--separation", type=float, default=10.0)
    p.add_argument("--noise", type=float, default=0.05)
    p.add_argument("--bd-threshold-fraction", type=float, default=0.05)
    args = p.parse_args()

    spec = Blobs(args.k, args.n_per, 1.0, args.separation)
    cfg = GranulationConfig(args.bd_threshold_fraction)
    print(f"{'seed':>4} {'m':>4} {'clean l*':>8} {'m(noisy)':>8} {'noisy l*':>8} {'secs':>6}")
    hits = [0, 0]
    for seed in range(args.seeds):
        t0 = time.perf_counter()
        row = []
        for noise in (None, Noise(args.noise)):
            g = granulate(generate_synthetic(spec, seed, noise).points, cfg)
            rep = run_sweep(g, config=SweepConfig(seed=seed))
            row += [g.m, rep.optimal_l]
        hits[0] += row[1] == args.k
        hits[1] += row[3] == args.k
        print(f"{seed:>4} {row[0]:>4} {row[1]:>8} {row[2]:>8} {row[3]:>8} "
              f"{time.perf_counter() - t0:>6.2f}")
    print(f"recovered k={args.k}: clean {hits[0]}/{args.seeds}, noisy {hits[1]}/{args.seeds}")


if __name__ == "__main__":
    main()
