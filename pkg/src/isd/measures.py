"""The eleven measurable properties of an information value.

Everything here is exact rational arithmetic over the finite model:
entity measures are weighted sums, atom means are computed with explicit
weights, and set distances count elements.  Floats appear only where a
metric genuinely leaves the rationals (euclidean distances whose square
root is irrational).
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from fractions import Fraction
from math import inf
from typing import Iterable, Mapping, Sequence, Union

from .errors import (
    EmptyInformationError,
    IncompleteReflectionError,
    NonInvertibleError,
    NotACopyError,
    NotEquivalenceError,
    UnboundedTimeError,
    ZeroTargetMeasureError,
)
from .model import (
    Information,
    InformationLike,
    ReflectionElement,
    StateElement,
    atoms,
    is_copy,
    is_reducible,
    require_valid,
)
from .timeset import Rational, TimeSet, as_fraction, exact_or_float_sqrt
from .timeset import symmetric_difference_size
from .values import EntityId


@functools.total_ordering
class ExtendedRate:
    """A nonnegative rational extended with +infinity.

    Used where a measure can be genuinely infinite: the sampling rate of
    a gap-free occurrence and the duration of an unbounded one.  Finite
    instances compare and test equal against plain rationals.
    """

    __slots__ = ("value",)

    def __init__(self, value: Fraction | None):
        object.__setattr__(self, "value", value)

    def __setattr__(self, *_):
        raise AttributeError("ExtendedRate is immutable")

    @classmethod
    def finite(cls, q: Rational) -> "ExtendedRate":
        q = as_fraction(q)
        if q < 0:
            raise ValueError("rate must be nonnegative")
        return cls(q)

    @classmethod
    def infinite(cls) -> "ExtendedRate":
        return cls(None)

    @property
    def is_infinite(self) -> bool:
        return self.value is None

    def _coerce(self, other):
        if isinstance(other, ExtendedRate):
            return other
        if isinstance(other, (int, Fraction)):
            return ExtendedRate.finite(Fraction(other))
        return NotImplemented

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.value == other.value

    def __lt__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.value is None:
            return False
        if other.value is None:
            return True
        return self.value < other.value

    def __hash__(self):
        return hash(("ExtendedRate", self.value))

    def plus(self, q: Rational) -> "ExtendedRate":
        if self.value is None:
            return self
        return ExtendedRate(max(Fraction(0), self.value + as_fraction(q)))

    def scaled(self, k: Rational) -> "ExtendedRate":
        k = as_fraction(k)
        if k < 0:
            raise ValueError("scale factor must be nonnegative")
        if self.value is None:
            return self if k != 0 else ExtendedRate.finite(0)
        return ExtendedRate(self.value * k)

    def clamped(self, cap: "ExtendedRate") -> "ExtendedRate":
        return self if self <= cap else cap

    def __str__(self):
        return "inf" if self.value is None else str(self.value)

    def __repr__(self):
        return f"ExtendedRate({self})"


@dataclass(frozen=True)
class MeasureAssignment:
    """A finite measure on entities: explicit weights with a default for
    everything else.  The counting measure is the all-ones default."""

    name: str
    weights: Mapping[EntityId, Fraction] = field(default_factory=dict)
    default_weight: Fraction = Fraction(1)

    def __post_init__(self):
        clean = {}
        for e, w in dict(self.weights).items():
            w = as_fraction(w)
            if w < 0:
                raise ValueError(f"negative weight for {e.id}")
            clean[e] = w
        object.__setattr__(self, "weights", clean)
        object.__setattr__(self, "default_weight", as_fraction(self.default_weight))
        if self.default_weight < 0:
            raise ValueError("negative default weight")

    @classmethod
    def counting(cls, name: str = "counting") -> "MeasureAssignment":
        return cls(name)

    def measure_of(self, entities: Iterable[EntityId]) -> Fraction:
        total = Fraction(0)
        for e in entities:
            total += self.weights.get(e, self.default_weight)
        return total


@dataclass(frozen=True)
class AtomWeighting:
    """Weights over atom positions (canonical atom order); the counting
    mode weighs every atom 1."""

    mode: str = "counting"
    weights: Mapping[int, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        if self.mode not in ("counting", "explicit"):
            raise ValueError(f"unknown atom weighting mode: {self.mode!r}")
        clean = {}
        for i, w in dict(self.weights).items():
            w = as_fraction(w)
            if w <= 0:
                raise ValueError("explicit atom weights must be positive")
            clean[int(i)] = w
        object.__setattr__(self, "weights", clean)

    @classmethod
    def counting(cls) -> "AtomWeighting":
        return cls("counting")

    @classmethod
    def explicit(cls, weights: Mapping[int, Rational]) -> "AtomWeighting":
        return cls("explicit", {i: as_fraction(w) for i, w in weights.items()})

    def weight(self, index: int) -> Fraction:
        if self.mode == "counting":
            return Fraction(1)
        try:
            return self.weights[index]
        except KeyError:
            raise ValueError(f"no weight for atom index {index}") from None


Element = Union[StateElement, ReflectionElement]


@dataclass(frozen=True)
class Relation:
    """A named binary relation over concrete elements, stored as ordered
    pairs.  ``declared_equivalence`` is the author's claim; equivalence
    is still checked against the element set it is used on."""

    name: str
    pairs: frozenset[tuple[Element, Element]]
    declared_equivalence: bool = False

    def __post_init__(self):
        object.__setattr__(self, "pairs", frozenset(tuple(p) for p in self.pairs))

    def elements(self) -> frozenset:
        out = set()
        for a, b in self.pairs:
            out.add(a)
            out.add(b)
        return frozenset(out)

    def classes_over(self, elements: Iterable[Element]) -> list[frozenset]:
        """Partition ``elements`` by the reflexive-symmetric-transitive
        closure of the pairs restricted to them."""
        elems = list(elements)
        index = {e: i for i, e in enumerate(elems)}
        parent = list(range(len(elems)))

        def find(i):
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        for a, b in self.pairs:
            if a in index and b in index:
                ra, rb = find(index[a]), find(index[b])
                if ra != rb:
                    parent[ra] = rb
        groups: dict[int, set] = {}
        for e, i in index.items():
            groups.setdefault(find(i), set()).add(e)
        return [frozenset(g) for g in groups.values()]

    def is_equivalence_over(self, elements: Iterable[Element]) -> bool:
        """Exactly the pairs of some partition of ``elements``: reflexive
        on all of them, symmetric, and transitive (closure adds nothing)."""
        elems = set(elements)
        for a, b in self.pairs:
            if a not in elems or b not in elems:
                return False
        classes = self.classes_over(elems)
        expected = set()
        for cls_ in classes:
            for a in cls_:
                for b in cls_:
                    expected.add((a, b))
        return self.pairs == expected


# -- the eleven measures -----------------------------------------------------


def volume(info: InformationLike, sigma: MeasureAssignment) -> Fraction:
    """sigma-measure of the carrier."""
    require_valid(info)
    return sigma.measure_of(info.carrier)


def delay(info: InformationLike, mu: AtomWeighting | None = None) -> Fraction:
    """Weighted mean, over atoms, of reflection-time sup minus
    occurrence-time sup.  Negative values mean the reflection runs ahead
    of the fact (a prediction).  An atom whose occurrence is unbounded
    contributes zero; an unbounded reflection time over a bounded
    occurrence has no finite convention and is an error."""
    mu = mu or AtomWeighting.counting()
    ats = atoms(info)
    if not ats:
        raise EmptyInformationError("delay needs at least one atom")
    total_w = Fraction(0)
    acc = Fraction(0)
    for i, atom in enumerate(ats):
        w = mu.weight(i)
        total_w += w
        if atom.state.at.is_unbounded:
            continue
        if atom.reflection.at.is_unbounded:
            raise UnboundedTimeError(
                "reflection time is unbounded over a bounded occurrence"
            )
        acc += w * (atom.reflection.at.sup - atom.state.at.sup)
    if total_w == 0:
        raise EmptyInformationError("atom weights sum to zero")
    return acc / total_w


def scope(info: InformationLike, sigma: MeasureAssignment) -> Fraction:
    """sigma-measure of the ontology."""
    require_valid(info)
    return sigma.measure_of(info.ontology)


def granularity(
    info: InformationLike,
    sigma: MeasureAssignment,
    mu: AtomWeighting | None = None,
) -> Fraction:
    """Weighted mean, over atoms, of the sigma-measure of each atom's
    subject: how coarse the average described unit is."""
    mu = mu or AtomWeighting.counting()
    ats = atoms(info)
    if not ats:
        raise EmptyInformationError("granularity needs at least one atom")
    total_w = Fraction(0)
    acc = Fraction(0)
    for i, atom in enumerate(ats):
        w = mu.weight(i)
        total_w += w
        acc += w * sigma.measure_of(atom.state.subject)
    if total_w == 0:
        raise EmptyInformationError("atom weights sum to zero")
    return acc / total_w


def variety(info: InformationLike, relation: Relation) -> int:
    """Number of equivalence classes the relation induces on the states."""
    require_valid(info)
    if not relation.is_equivalence_over(info.states):
        raise NotEquivalenceError(
            f"relation {relation.name!r} is not an equivalence over the states"
        )
    return len(relation.classes_over(info.states))


def transport_relation(info: InformationLike, relation: Relation) -> Relation:
    """Push a relation on states through the mapping onto reflections.
    Needs reducibility so the transport is faithful in both directions."""
    require_valid(info)
    if not is_reducible(info):
        raise NonInvertibleError("relation transport needs a reducible information")
    m = info.map
    pairs = frozenset((m[a], m[b]) for a, b in relation.pairs)
    return Relation(relation.name, pairs, relation.declared_equivalence)


def induce_relation(info: InformationLike, relation: Relation) -> Relation:
    """Transport an equivalence on states to the reflections.  The result
    is again an equivalence with the same number of classes."""
    if not relation.is_equivalence_over(info.states):
        raise NotEquivalenceError(
            f"relation {relation.name!r} is not an equivalence over the states"
        )
    return transport_relation(info, relation)


def duration(info: InformationLike) -> ExtendedRate:
    """Width of the occurrence hull: sup minus inf, infinite when the
    occurrence is unbounded above."""
    require_valid(info)
    occ = info.occurrence
    if occ.is_unbounded:
        return ExtendedRate.infinite()
    return ExtendedRate.finite(occ.sup - occ.inf)


def sampling_rate(info: InformationLike) -> ExtendedRate:
    """Gap count divided by total gap length over the occurrence hull.

    Equally spaced samples with gap g measure exactly 1/g; an occurrence
    with no gaps (one connected component) is continuous sampling and
    measures infinite.
    """
    require_valid(info)
    gaps = info.occurrence.hull_gaps()
    if not gaps:
        return ExtendedRate.infinite()
    total = sum((hi - lo for lo, hi in gaps), Fraction(0))
    if total == 0:
        return ExtendedRate.infinite()
    return ExtendedRate.finite(Fraction(len(gaps)) / total)


def aggregation(
    info: InformationLike,
    relations: Sequence[Relation],
    mode: str = "instances",
) -> Fraction:
    """Relation instances per state: the total count of distinct labeled
    tuples across the given relations, divided by the number of states.
    ``mode="types"`` counts each relation once instead."""
    require_valid(info)
    if not info.states:
        raise EmptyInformationError("aggregation needs at least one state")
    if mode == "instances":
        count = sum(len(r.pairs) for r in relations)
    elif mode == "types":
        count = len(relations)
    else:
        raise ValueError(f"unknown aggregation mode: {mode!r}")
    return Fraction(count, len(info.states))


def coverage(
    base: Information,
    copies: Sequence[Information],
    sigma: MeasureAssignment,
    target: Iterable[EntityId],
    *,
    allow_non_copies: bool = False,
) -> Fraction:
    """Summed carrier measure of the base and its copies, relative to a
    target entity set.  More copies on disjoint carriers mean the same
    content reaches more of the target; the ratio may exceed 1 when
    carriers overlap or the target is narrow."""
    require_valid(base)
    target = frozenset(target)
    denom = sigma.measure_of(target)
    if denom == 0:
        raise ZeroTargetMeasureError("target has sigma-measure zero")
    members = [base, *copies]
    for c in copies:
        require_valid(c)
        if not allow_non_copies and not is_copy(base, c):
            raise NotACopyError(
                f"{c.name!r} is not a copy of {base.name!r} "
                "(pass allow_non_copies=True to compute anyway)"
            )
    for m in members:
        if not m.carrier <= target:
            raise ValueError(f"carrier of {m.name!r} reaches outside the target")
    total = sum((sigma.measure_of(m.carrier) for m in members), Fraction(0))
    return total / denom


# -- metrics -----------------------------------------------------------------

MISMATCH_COMPONENTS = (
    "ontology",
    "occurrence",
    "states",
    "carrier",
    "reflection_time",
    "reflections",
)


@dataclass(frozen=True)
class Metric:
    """How far apart two things are, and in what units.

    kinds: ``symmetric_difference_count`` and ``jaccard_distance`` compare
    element sets; ``euclidean_on_values`` compares numeric values aligned
    through the mapping; ``weighted_product`` sums per-component set
    distances of the six components with the given weights (default 1).
    """

    kind: str
    component_weights: Mapping[str, Fraction] = field(default_factory=dict)

    _KINDS = (
        "symmetric_difference_count",
        "jaccard_distance",
        "euclidean_on_values",
        "weighted_product",
    )

    def __post_init__(self):
        if self.kind not in self._KINDS:
            raise ValueError(f"unknown metric kind: {self.kind!r}")
        clean = {}
        for k, w in dict(self.component_weights).items():
            if k not in MISMATCH_COMPONENTS:
                raise ValueError(f"unknown mismatch component: {k!r}")
            w = as_fraction(w)
            if w < 0:
                raise ValueError("component weights must be nonnegative")
            clean[k] = w
        object.__setattr__(self, "component_weights", clean)

    def weight(self, component: str) -> Fraction:
        return self.component_weights.get(component, Fraction(1))


def _set_distance(kind: str, a: frozenset, b: frozenset):
    sym = len(a ^ b)
    if kind == "symmetric_difference_count":
        return Fraction(sym)
    if kind == "jaccard_distance":
        union = len(a | b)
        return Fraction(sym, union) if union else Fraction(0)
    raise ValueError(f"metric kind {kind!r} does not apply to element sets")


def _timeset_distance(a: TimeSet, b: TimeSet):
    length, isolated = symmetric_difference_size(a, b)
    if length is inf:
        return inf
    return length + isolated


def distortion(
    info: InformationLike,
    reflection_map: Mapping[ReflectionElement, StateElement],
    metric: Metric,
) -> Fraction | float:
    """Distance between the true states and the states estimated from the
    reflections.  ``reflection_map`` must assign an estimate to every
    reflection; the exact inverse of a reducible information gives
    distance zero under every metric kind."""
    require_valid(info)
    missing = [r for r in info.sorted_reflections() if r not in reflection_map]
    if missing:
        raise IncompleteReflectionError(
            f"no estimate for reflection {missing[0]}"
        )
    if metric.kind in ("symmetric_difference_count", "jaccard_distance"):
        estimated = frozenset(reflection_map[r] for r in info.reflections)
        return _set_distance(metric.kind, frozenset(info.states), estimated)
    if metric.kind == "euclidean_on_values":
        total = Fraction(0)
        for s, r in info.mapping:
            truth = s.value.numeric_components()
            est = reflection_map[r].value.numeric_components()
            if len(truth) != len(est):
                raise ValueError(
                    "state and estimate values have different numeric shapes"
                )
            for x, y in zip(truth, est):
                total += (x - y) ** 2
        return exact_or_float_sqrt(total)
    raise ValueError(f"metric kind {metric.kind!r} does not apply to distortion")


def mismatch(info: InformationLike, target: InformationLike, metric: Metric) -> Fraction | float:
    """Weighted sum of the six per-component distances between two
    informations.  Zero exactly when all six components coincide; set
    components use symmetric-difference counts, time components use
    symmetric-difference length plus isolated-point count."""
    if metric.kind != "weighted_product":
        raise ValueError("mismatch requires a weighted_product metric")
    require_valid(info)
    require_valid(target)
    parts = {
        "ontology": _set_distance(
            "symmetric_difference_count", info.ontology, target.ontology
        ),
        "occurrence": _timeset_distance(info.occurrence, target.occurrence),
        "states": _set_distance(
            "symmetric_difference_count", frozenset(info.states), frozenset(target.states)
        ),
        "carrier": _set_distance(
            "symmetric_difference_count", info.carrier, target.carrier
        ),
        "reflection_time": _timeset_distance(info.reflection_time, target.reflection_time),
        "reflections": _set_distance(
            "symmetric_difference_count",
            frozenset(info.reflections),
            frozenset(target.reflections),
        ),
    }
    total = Fraction(0)
    for name, dist in parts.items():
        w = metric.weight(name)
        if w == 0:
            continue
        if isinstance(dist, float):  # only inf escapes the rationals here
            return inf
        total += w * dist
    return total
