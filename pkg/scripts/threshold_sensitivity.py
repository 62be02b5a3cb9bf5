"""How the balance-degree threshold fraction drives ball count and the chosen l."""

import argparse

from hcvi import Blobs, Noise, SweepConfig, generate_synthetic, granulate, run_sweep
from hcvi.granulation import GranulationConfig
from hcvi.sweep import SweepBoundError


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--noise", type=float, default=0.0)
    p.add_argument("--fractions", type=float, nargs="+",
                   default=[0.01, 0.02, 0.05, 0.1, 0.2, 0.4])
    args = p.parse_args()

    noise = Noise(args.noise) if args.noise else None
    data = generate_synthetic(Blobs(4, 125, 1.0, 10.0), args.seed, noise)
    print(f"{'fraction':>8} {'balls':>6} {'noise':>6} {'l range':>8} {'l*':>4}")
    for frac in args.fractions:
        g = granulate(data.points, GranulationConfig(frac))
        try:
            rep = run_sweep(g, config=SweepConfig(seed=args.seed))
            rng, best = f"2..{rep.l_max}", rep.optimal_l
        except SweepBoundError:
            rng, best = "-", "-"
        print(f"{frac:>8} {g.m:>6} {len(g.noise_balls):>6} {rng:>8} {best:>4}")


if __name__ == "__main__":
    main()
