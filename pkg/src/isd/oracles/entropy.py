"""Shannon entropy of finite distributions and the uniform-maximum check.

The volume of a random-event information is bounded below by the entropy
of its outcome distribution: H(p) <= log2(n) <= n - 1 bits, with the
first bound tight exactly at the uniform distribution.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from ..timeset import Rational, as_fraction

_BOUND_TOL = 1e-12


@dataclass(frozen=True)
class ProbabilityVector:
    """Exact rational probabilities: positive entries summing to one."""

    p: tuple[Fraction, ...]

    def __post_init__(self):
        entries = tuple(as_fraction(q) for q in self.p)
        if len(entries) < 2:
            raise ValueError("need at least two outcomes")
        if any(q <= 0 for q in entries):
            raise ValueError("probabilities must be positive")
        if sum(entries) != 1:
            raise ValueError("probabilities must sum to exactly one")
        object.__setattr__(self, "p", entries)

    @classmethod
    def of(cls, *qs: Rational) -> "ProbabilityVector":
        return cls(tuple(as_fraction(q) for q in qs))

    @classmethod
    def uniform(cls, n: int) -> "ProbabilityVector":
        return cls(tuple(Fraction(1, n) for _ in range(n)))

    def __len__(self):
        return len(self.p)


@dataclass(frozen=True)
class EntropyResult:
    """Entropy in bits plus the two bound checks evaluated on the spot."""

    bits: float
    n: int
    le_log2_n: bool
    log2_n_le_n_minus_1: bool


def _entropy_floats(ps) -> float:
    return -sum(q * math.log2(q) for q in ps if q > 0)


def shannon_entropy(p: ProbabilityVector) -> EntropyResult:
    """H(p) = -sum p_i log2 p_i, with the bound flags
    H <= log2 n and log2 n <= n - 1 evaluated alongside."""
    n = len(p)
    bits = _entropy_floats(float(q) for q in p.p)
    log2n = math.log2(n)
    return EntropyResult(
        bits=bits,
        n=n,
        le_log2_n=bits <= log2n + _BOUND_TOL,
        log2_n_le_n_minus_1=log2n <= (n - 1) + _BOUND_TOL,
    )


@dataclass(frozen=True)
class EntropyMaxReport:
    n: int
    trials: int
    all_within_bounds: bool
    max_bits: float
    max_is_near_uniform: bool
    max_gap_to_log2_n: float
    near_max_always_near_uniform: bool


def _simplex_samples(n: int, trials: int, rng: random.Random) -> Iterable[list[float]]:
    """Stratified sampler for extremum verification: plain random points,
    the claimed extreme point itself, small perturbations of it, and
    near-degenerate corners, so both bounds get exercised where they bind."""
    yield [1.0 / n] * n
    for _ in range(max(1, trials // 10)):
        base = [1.0 / n + rng.uniform(-1e-4, 1e-4) / n for _ in range(n)]
        total = sum(base)
        yield [x / total for x in base]
    for _ in range(max(1, trials // 10)):
        big = rng.randrange(n)
        point = [1e-6 * rng.uniform(0.5, 1.5) for _ in range(n)]
        point[big] = 1.0
        total = sum(point)
        yield [x / total for x in point]
    remaining = trials - 1 - 2 * max(1, trials // 10)
    for _ in range(max(0, remaining)):
        raw = [-math.log(rng.random()) for _ in range(n)]
        total = sum(raw)
        yield [x / total for x in raw]


def verify_entropy_max(n: int, trials: int = 10_000, seed: int = 0) -> EntropyMaxReport:
    """Sample the probability simplex and check the extremum claim: every
    sample satisfies H <= log2 n <= n - 1, the maximum over the samples
    comes within 1e-3 bits of log2 n, and every sample that close to the
    bound is itself close to uniform (Pinsker-style distance bound)."""
    if n < 2:
        raise ValueError("need at least two outcomes")
    rng = random.Random(seed)
    log2n = math.log2(n)
    tol = 1e-3
    # If H >= log2 n - tol then total variation to uniform is at most
    # sqrt(tol * ln2 / 2); allow a small numerical cushion on top.
    tv_bound = math.sqrt(tol * math.log(2) / 2) * 1.05 + 1e-9

    all_ok = True
    near_ok = True
    max_bits = -1.0
    max_dist = 0.0
    for sample in _simplex_samples(n, trials, rng):
        bits = _entropy_floats(sample)
        if bits > log2n + _BOUND_TOL or log2n > (n - 1) + _BOUND_TOL:
            all_ok = False
        dist = 0.5 * sum(abs(x - 1.0 / n) for x in sample)
        if bits > max_bits:
            max_bits = bits
            max_dist = dist
        if log2n - bits <= tol and dist > tv_bound:
            near_ok = False
    return EntropyMaxReport(
        n=n,
        trials=trials,
        all_within_bounds=all_ok,
        max_bits=max_bits,
        max_is_near_uniform=max_dist <= tv_bound,
        max_gap_to_log2_n=log2n - max_bits,
        near_max_always_near_uniform=near_ok,
    )
