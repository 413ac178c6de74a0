#!/usr/bin/env python3
"""Sweep sample spacing against a pure tone and watch aliasing set in.

Usage:
  python3 scripts/nyquist_sweep.py [--period 2] [--span 48]

For each gap the script samples the tone, refits it, and prints both the
residual on the samples and the residual against the true signal on a
dense grid.  The first column flatters every row; only the second one
exposes the undersampled fits, which is why the reconstruction API takes
an optional reference signal.
"""

from __future__ import annotations

import argparse
from fractions import Fraction

from isd.measures import sampling_rate
from isd.oracles import PeriodicSignal, reconstruct_signal, sample_signal

GAPS = ["1/4", "1/2", "3/4", "1", "5/4", "3/2", "2", "3", "4", "8"]


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--period", type=Fraction, default=Fraction(2))
    ap.add_argument("--span", type=Fraction, default=Fraction(48))
    args = ap.parse_args()

    tone = PeriodicSignal.tone(args.period)
    threshold = 2 / args.period
    print(f"tone period {args.period}, rate threshold {threshold}")
    print(f"{'gap':>5}  {'rate':>6}  {'fit resid':>10}  {'true resid':>10}  verdict")
    for gap_s in GAPS:
        gap = Fraction(gap_s)
        samples = sample_signal(tone, gap=gap, span=args.span)
        r = reconstruct_signal(samples, args.period, reference=tone)
        rate = sampling_rate(samples)
        verdict = "ok" if r.reducible else "aliased"
        if not r.meets_rate_threshold:
            verdict += " (rate below threshold)"
        print(
            f"{gap_s:>5}  {str(rate):>6}  {r.fit_residual:>10.2e}  "
            f"{r.residual:>10.2e}  {verdict}"
        )
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
