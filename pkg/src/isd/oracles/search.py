"""Search cost oracles: average search length and mismatch retrieval.

Retrieving the library entry closest to a target costs comparisons; with
a zero-mismatch entry present and an early-stop threshold the expected
cost of a sequential scan is (n+1)/2, a balanced discrimination tree
averages ((n+1)/n) log2(n+1) - 1 for n = 2^h - 1, and without a
threshold a strictly positive minimum forces all n comparisons.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from ..errors import EmptyLibraryError
from ..measures import Metric, mismatch
from ..model import Information


def asl_sequential(n: int) -> Fraction:
    """Expected comparisons of a sequential scan that stops at the match,
    with the match uniformly placed: (n + 1) / 2."""
    if n < 1:
        raise ValueError("need at least one entry")
    return Fraction(n + 1, 2)


def _tree_depth_total(lo: int, hi: int, depth: int) -> int:
    """Sum of node depths of the midpoint discrimination tree on [lo, hi]."""
    if lo > hi:
        return 0
    mid = (lo + hi) // 2
    return (
        depth
        + _tree_depth_total(lo, mid - 1, depth + 1)
        + _tree_depth_total(mid + 1, hi, depth + 1)
    )


def asl_binary(n: int) -> Fraction:
    """Exact average depth (root depth 1) of the midpoint discrimination
    tree over n ordered entries, computed by building the tree."""
    if n < 1:
        raise ValueError("need at least one entry")
    return Fraction(_tree_depth_total(1, n, 1), n)


def asl_binary_closed_form(n: int) -> Fraction:
    """((n+1)/n) log2(n+1) - 1, exact; only full trees (n = 2^h - 1)
    admit the closed form, anything else raises ValueError."""
    if n < 1:
        raise ValueError("need at least one entry")
    m = n + 1
    h = m.bit_length() - 1
    if m != 1 << h:
        raise ValueError(f"{n} is not of the form 2^h - 1")
    return Fraction(n + 1, n) * h - 1


@dataclass(frozen=True)
class SearchLibrary:
    """A target, the entries to scan, the mismatch metric, and an
    optional early-stop threshold."""

    target: Information
    entries: tuple[Information, ...]
    metric: Metric
    threshold: Fraction | None = None

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(self.entries))


@dataclass(frozen=True)
class SearchResult:
    index: int
    comparisons: int
    distance: Fraction | float


def min_mismatch_search(library: SearchLibrary) -> SearchResult:
    """Scan the entries in order computing mismatch against the target.

    With a threshold, stop at the first entry at or below it (comparisons
    = its position).  Without one, all n entries are compared and the
    first entry attaining the minimum is returned.
    """
    if not library.entries:
        raise EmptyLibraryError("cannot search an empty library")
    best_i = 0
    best_d = None
    for i, entry in enumerate(library.entries):
        d = mismatch(library.target, entry, library.metric)
        if library.threshold is not None and d <= library.threshold:
            return SearchResult(index=i, comparisons=i + 1, distance=d)
        if best_d is None or d < best_d:
            best_i, best_d = i, d
    return SearchResult(index=best_i, comparisons=len(library.entries), distance=best_d)


def asl_sequential_empirical(
    entries: Sequence[Information],
    metric: Metric,
    trials: int = 100_000,
    seed: int = 0,
) -> Fraction:
    """Mean comparisons of the threshold-zero sequential search when the
    target is a uniformly random entry.

    The pairwise mismatch distances are computed once with the real
    metric; each trial then replays the sequential scan over the
    precomputed row, counting comparisons until the zero entry.
    """
    n = len(entries)
    if n == 0:
        raise EmptyLibraryError("cannot search an empty library")
    rows = []
    for target in entries:
        rows.append([mismatch(target, e, metric) for e in entries])
    for k, row in enumerate(rows):
        if row[k] != 0:
            raise ValueError(f"entry {k} does not match itself under the metric")
    rng = random.Random(seed)
    total = 0
    for _ in range(trials):
        row = rows[rng.randrange(n)]
        comparisons = 0
        for d in row:
            comparisons += 1
            if d == 0:
                break
        total += comparisons
    return Fraction(total, trials)
