#!/usr/bin/env python3
"""Filter-versus-raw tracking error over a batch of seeded runs.

Usage:
  python3 scripts/tracking_rmse.py [--runs 20] [--steps 1000] [--noise 1.0]

Each run simulates 1-D constant-velocity motion observed through noisy
position measurements, then compares the filtered position estimates
against reading the measurements verbatim.  Prints one row per run and a
summary line with the win count.
"""

from __future__ import annotations

import argparse

import numpy as np

from isd.oracles import kalman_filter, simulate_tracking


def rmse(a: np.ndarray, b: np.ndarray) -> float:
    return float(np.sqrt(np.mean((a - b) ** 2)))


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--runs", type=int, default=20)
    ap.add_argument("--steps", type=int, default=1000)
    ap.add_argument("--noise", type=float, default=1.0,
                    help="measurement noise variance")
    args = ap.parse_args()

    print(f"{'seed':>4}  {'rmse(filter)':>12}  {'rmse(raw)':>12}  {'ratio':>6}")
    wins = 0
    ratios = []
    for seed in range(args.runs):
        run = simulate_tracking(
            steps=args.steps, measurement_noise=args.noise, seed=seed
        )
        est = kalman_filter(run.model).states[:, 0]
        raw = run.model.zs[:, 0]
        truth = run.true_positions
        rf, rr = rmse(est, truth), rmse(raw, truth)
        ratios.append(rf / rr)
        wins += rf < rr
        print(f"{seed:>4}  {rf:>12.5f}  {rr:>12.5f}  {rf / rr:>6.3f}")

    print()
    print(f"filter beat raw in {wins}/{args.runs} runs, "
          f"mean ratio {np.mean(ratios):.3f}")
    return 0 if wins == args.runs else 1


if __name__ == "__main__":
    raise SystemExit(main())
