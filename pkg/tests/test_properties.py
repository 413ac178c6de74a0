"""Randomized invariants.  Structured inputs come from the verify
builders, driven through hypothesis-chosen seeds so shrinking still
produces a small reproducible counterexample (the seed)."""

import random
from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from isd.document import loads_document, emit_document
from isd.measures import (
    MeasureAssignment,
    Metric,
    aggregation,
    delay,
    distortion,
    induce_relation,
    mismatch,
    sampling_rate,
    scope,
    variety,
    volume,
)
from functools import reduce

from isd.model import (
    Information,
    atoms,
    check_chain,
    collapse_chain,
    combine,
    invert,
    is_reducible,
    is_sub_information,
    reduction_map,
    validate,
)
from isd.timeset import TimeSet, symmetric_difference_size
from isd.verify import (
    random_chain,
    random_information,
    random_partition_relation,
)

rationals = st.fractions(min_value=-50, max_value=50, max_denominator=12)
seeds = st.integers(min_value=0, max_value=10**9)


@st.composite
def timesets(draw):
    kind = draw(st.integers(0, 2))
    if kind == 0:
        pts = draw(st.lists(rationals, min_size=1, max_size=6))
        return TimeSet.from_points(pts)
    if kind == 1:
        spans = draw(
            st.lists(st.tuples(rationals, rationals), min_size=1, max_size=4)
        )
        return TimeSet.from_intervals(
            [(min(a, b), max(a, b)) for a, b in spans]
        )
    start = draw(rationals)
    return TimeSet.ray(start)


@st.composite
def infos(draw):
    rng = random.Random(draw(seeds))
    return random_information(rng)


# -- time sets ----------------------------------------------------------------


@given(timesets())
def test_timeset_normal_form_is_fixed_point(ts):
    rebuilt = None
    if ts.intervals:
        rebuilt = TimeSet.from_intervals(ts.intervals)
    if ts.ray_from is not None:
        ray = TimeSet.ray(ts.ray_from)
        rebuilt = ray if rebuilt is None else rebuilt.union(ray)
    assert rebuilt == ts


@given(timesets(), timesets())
def test_timeset_union_commutes(a, b):
    assert a.union(b) == b.union(a)


@given(timesets(), timesets())
def test_timeset_union_contains_both(a, b):
    u = a.union(b)
    assert a.is_subset(u) and b.is_subset(u)


@given(timesets())
def test_timeset_self_difference_vanishes(ts):
    assert symmetric_difference_size(ts, ts) == (Fraction(0), 0)


@given(timesets(), timesets())
def test_timeset_difference_symmetric(a, b):
    assert symmetric_difference_size(a, b) == symmetric_difference_size(b, a)


@given(timesets(), rationals)
def test_timeset_shift_preserves_structure(ts, d):
    moved = ts.shift(d)
    assert moved.connected_components() == ts.connected_components()
    assert moved.is_unbounded == ts.is_unbounded
    if not ts.is_unbounded:
        assert moved.lebesgue_measure() == ts.lebesgue_measure()
    assert moved.shift(-d) == ts


# -- structural round trips ---------------------------------------------------


@given(infos())
@settings(max_examples=60, deadline=None)
def test_random_information_valid_and_reducible(info):
    assert validate(info) == []
    assert is_reducible(info)


@given(infos())
@settings(max_examples=60, deadline=None)
def test_inverse_involution(info):
    back = invert(invert(info))
    assert back.ontology == info.ontology
    assert back.states == info.states
    assert back.reflections == info.reflections
    assert set(back.mapping) == set(info.mapping)


@given(infos())
@settings(max_examples=60, deadline=None)
def test_atoms_recombine(info):
    parts = [a.lift() for a in atoms(info)]
    whole = reduce(combine, parts)
    assert whole == info


def _restrict(info, kept_pairs):
    states = [s for s, _ in kept_pairs]
    reflections = [r for _, r in kept_pairs]
    times = lambda els: reduce(TimeSet.union, (e.at for e in els))
    return Information(
        "sub",
        frozenset().union(*(s.subject for s in states)),
        times(states),
        frozenset(states),
        frozenset().union(*(r.carrier_part for r in reflections)),
        times(reflections),
        frozenset(reflections),
        kept_pairs,
    )


@given(infos(), seeds)
@settings(max_examples=60, deadline=None)
def test_sub_information_reducible_and_monotone(info, pick):
    rng = random.Random(pick)
    pairs = list(info.mapping)
    kept = [p for p in pairs if rng.random() < 0.5] or [pairs[0]]
    sub = _restrict(info, kept)
    ok, proper = is_sub_information(sub, info)
    assert ok
    assert proper == (len(kept) < len(pairs))
    assert is_reducible(sub)
    counting = MeasureAssignment.counting()
    assert volume(sub, counting) <= volume(info, counting)
    assert scope(sub, counting) <= scope(info, counting)


@given(infos())
@settings(max_examples=60, deadline=None)
def test_document_codec_round_trip(info):
    from isd.document import ModelDocument

    doc = ModelDocument(
        format_version="1",
        entities=(),
        informations=(info,),
        measures=(),
        relations=(),
        systems=(),
        chains=(),
    )
    text = emit_document(doc)
    again = loads_document(text)
    assert emit_document(again) == text


# -- chains -------------------------------------------------------------------


@given(seeds)
@settings(max_examples=40, deadline=None)
def test_chain_delay_additive(seed):
    rng = random.Random(seed)
    chain = random_chain(rng)
    assert check_chain(chain) == []
    whole = collapse_chain(chain)
    assert delay(whole) == sum(delay(link) for link in chain.links)


@given(seeds)
@settings(max_examples=30, deadline=None)
def test_chain_collapse_matches_pairwise(seed):
    from isd.model import compose
    from functools import reduce

    rng = random.Random(seed)
    chain = random_chain(rng, n_links=3)
    whole = collapse_chain(chain)
    paired = reduce(compose, chain.links)
    assert whole.states == paired.states
    assert whole.reflections == paired.reflections
    assert set(whole.mapping) == set(paired.mapping)
    assert whole.name == paired.name


# -- measures -----------------------------------------------------------------


@given(infos(), seeds)
@settings(max_examples=60, deadline=None)
def test_variety_transport_invariant(info, pick):
    rng = random.Random(pick)
    rel = random_partition_relation(rng, info)
    induced = induce_relation(info, rel)
    assert variety(info, rel) == len(induced.classes_over(info.reflections))


@given(infos(), seeds)
@settings(max_examples=60, deadline=None)
def test_aggregation_two_sided(info, pick):
    rng = random.Random(pick)
    rel = random_partition_relation(rng, info)
    state_side = aggregation(info, [rel])
    m = info.map
    moved = frozenset((m[x], m[y]) for x, y in rel.pairs)
    assert state_side == Fraction(len(moved), len(info.reflections))


@given(infos())
@settings(max_examples=60, deadline=None)
def test_distortion_zero_under_reduction(info):
    j = reduction_map(info)
    for kind in (
        "symmetric_difference_count",
        "jaccard_distance",
        "euclidean_on_values",
    ):
        assert distortion(info, j, Metric(kind)) == 0


@given(infos())
@settings(max_examples=60, deadline=None)
def test_mismatch_reflexive(info):
    assert mismatch(info, info, Metric("weighted_product")) == 0


@given(infos(), infos())
@settings(max_examples=60, deadline=None)
def test_mismatch_symmetric(a, b):
    m = Metric("weighted_product")
    assert mismatch(a, b, m) == mismatch(b, a, m)


@given(st.fractions(min_value="1/8", max_value=8, max_denominator=8),
       st.integers(min_value=2, max_value=9))
def test_sampling_rate_inverse_gap(gap, count):
    from isd.model import Information, ReflectionElement, StateElement
    from isd.values import Value, objective

    src, cam = objective("src"), objective("cam")
    pairs = []
    for k in range(count):
        t = TimeSet.point(k * gap)
        pairs.append(
            (
                StateElement({src}, t, Value.scalar(k)),
                ReflectionElement({cam}, t, Value.scalar(k)),
            )
        )
    times = TimeSet.from_points([k * gap for k in range(count)])
    info = Information(
        "ticks", {src}, times, {s for s, _ in pairs},
        {cam}, times, {r for _, r in pairs}, pairs,
    )
    assert sampling_rate(info) == 1 / gap
