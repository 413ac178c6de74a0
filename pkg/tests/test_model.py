"""Structural algebra: validation, inversion, chains, sub-information,
combination, atoms, copies."""

from fractions import Fraction

import pytest

from isd.errors import (
    ChainMismatchError,
    CombineConflictError,
    InvalidInformationError,
    NonInvertibleError,
)
from isd.model import (
    Information,
    RawMapping,
    ReflectionElement,
    SerialChain,
    StateElement,
    atoms,
    check_chain,
    check_link,
    collapse_chain,
    combine,
    compose,
    invert,
    is_copy,
    is_reducible,
    is_sub_information,
    reduction_map,
    validate,
)
from isd.timeset import TimeSet
from isd.values import Value, objective, subjective

from conftest import lossy_info, two_atom_info


def test_valid_info_has_no_violations(pair_info):
    assert validate(pair_info) == []


def test_subjective_carrier_rejected():
    a = objective("a")
    ghost = subjective("ghost")
    s = StateElement({a}, TimeSet.point(0), Value.scalar(1))
    r = ReflectionElement({ghost}, TimeSet.point(1), Value.scalar(1))
    info = Information(
        "bad", {a}, TimeSet.point(0), {s}, {ghost}, TimeSet.point(1), {r}, [(s, r)]
    )
    messages = [v.message for v in validate(info)]
    assert any(m == "carrier not objective: ghost" for m in messages)


def test_subjective_ontology_allowed():
    mind = subjective("mind")
    cam = objective("cam")
    s = StateElement({mind}, TimeSet.point(0), Value.symbol("idea"))
    r = ReflectionElement({cam}, TimeSet.point(1), Value.symbol("note"))
    info = Information(
        "memoir", {mind}, TimeSet.point(0), {s}, {cam}, TimeSet.point(1), {r}, [(s, r)]
    )
    assert validate(info) == []


def test_totality_and_surjectivity_reported():
    a, cam = objective("a"), objective("cam")
    s1 = StateElement({a}, TimeSet.point(0), Value.scalar(1))
    s2 = StateElement({a}, TimeSet.point(1), Value.scalar(2))
    r1 = ReflectionElement({cam}, TimeSet.point(2), Value.scalar(1))
    r2 = ReflectionElement({cam}, TimeSet.point(3), Value.scalar(2))
    partial = Information(
        "partial",
        {a},
        TimeSet.from_points([0, 1]),
        {s1, s2},
        {cam},
        TimeSet.from_points([2, 3]),
        {r1, r2},
        [(s1, r1)],
    )
    codes = {v.code for v in validate(partial)}
    assert "mapping-not-total" in codes
    assert "mapping-not-surjective" in codes


def test_two_reflections_for_one_state_rejected_at_construction():
    a, cam = objective("a"), objective("cam")
    s = StateElement({a}, TimeSet.point(0), Value.scalar(1))
    r1 = ReflectionElement({cam}, TimeSet.point(1), Value.scalar(1))
    r2 = ReflectionElement({cam}, TimeSet.point(2), Value.scalar(2))
    with pytest.raises(ValueError):
        Information(
            "multi",
            {a},
            TimeSet.point(0),
            {s},
            {cam},
            TimeSet.from_points([1, 2]),
            {r1, r2},
            [(s, r1), (s, r2)],
        )


def test_containment_violations():
    a, b, cam = objective("a"), objective("b"), objective("cam")
    s = StateElement({b}, TimeSet.point(5), Value.scalar(1))
    r = ReflectionElement({cam}, TimeSet.point(6), Value.scalar(1))
    info = Information(
        "loose", {a}, TimeSet.point(0), {s}, {cam}, TimeSet.point(6), {r}, [(s, r)]
    )
    codes = {v.code for v in validate(info)}
    assert "state-subject-outside-ontology" in codes
    assert "state-time-outside-occurrence" in codes


def test_name_excluded_from_equality(pair_info):
    again = two_atom_info(name="other label")
    assert pair_info == again
    assert hash(pair_info) == hash(again)


def test_reducibility(pair_info):
    assert is_reducible(pair_info)
    assert not is_reducible(lossy_info())


def test_invert_roundtrip(pair_info):
    back = invert(invert(pair_info))
    assert back == pair_info
    assert isinstance(back, Information)


def test_invert_into_subjective_ontology_stays_raw():
    mind = subjective("mind")
    cam = objective("cam")
    s = StateElement({mind}, TimeSet.point(0), Value.symbol("idea"))
    r = ReflectionElement({cam}, TimeSet.point(1), Value.symbol("note"))
    info = Information(
        "memoir", {mind}, TimeSet.point(0), {s}, {cam}, TimeSet.point(1), {r}, [(s, r)]
    )
    inv = invert(info)
    assert isinstance(inv, RawMapping)
    assert invert(inv) == info


def test_invert_requires_injectivity():
    with pytest.raises(NonInvertibleError):
        invert(lossy_info())


def test_reduction_map_recovers_states(pair_info):
    m = reduction_map(pair_info)
    assert set(m.values()) == set(pair_info.states)


def test_check_link_and_compose(pair_info):
    # build the follow-on link from the reflections verbatim
    nxt_states = [
        StateElement(r.carrier_part, r.at, r.value) for r in pair_info.reflections
    ]
    disk = objective("disk")
    pairs = [
        (s, ReflectionElement({disk}, s.at.shift(1), s.value)) for s in nxt_states
    ]
    nxt = Information(
        "store",
        pair_info.carrier,
        pair_info.reflection_time,
        nxt_states,
        {disk},
        pair_info.reflection_time.shift(1),
        [r for _, r in pairs],
        pairs,
    )
    assert check_link(pair_info, nxt) == []
    composed = compose(pair_info, nxt)
    assert composed.states == pair_info.states
    assert composed.carrier == {disk}
    assert len(composed.mapping) == 2

    with pytest.raises(ChainMismatchError):
        compose(nxt, pair_info)


def test_chain_collapse_matches_pairwise_compose(pair_info):
    nxt_states = [
        StateElement(r.carrier_part, r.at, r.value) for r in pair_info.reflections
    ]
    disk = objective("disk")
    pairs = [
        (s, ReflectionElement({disk}, s.at.shift(1), s.value)) for s in nxt_states
    ]
    nxt = Information(
        "store",
        pair_info.carrier,
        pair_info.reflection_time,
        nxt_states,
        {disk},
        pair_info.reflection_time.shift(1),
        [r for _, r in pairs],
        pairs,
    )
    chain = SerialChain((pair_info, nxt))
    assert check_chain(chain) == []
    assert collapse_chain(chain) == compose(pair_info, nxt)


def test_chain_mismatch_detected(pair_info):
    other = lossy_info()
    problems = check_chain(SerialChain((pair_info, other)))
    assert problems
    with pytest.raises(ChainMismatchError):
        collapse_chain(SerialChain((pair_info, other)))


def test_sub_information(pair_info):
    (first, second) = atoms(pair_info)
    part = first.lift("part")
    is_sub, proper = is_sub_information(part, pair_info)
    assert is_sub and proper
    assert is_sub_information(pair_info, pair_info) == (True, False)
    foreign = lossy_info()
    assert is_sub_information(foreign, pair_info) == (False, False)


def test_combine_atoms_rebuilds(pair_info):
    first, second = (a.lift() for a in atoms(pair_info))
    assert combine(first, second) == pair_info


def test_combine_conflict():
    a, cam = objective("a"), objective("cam")
    s = StateElement({a}, TimeSet.point(0), Value.scalar(1))
    r1 = ReflectionElement({cam}, TimeSet.point(1), Value.scalar(1))
    r2 = ReflectionElement({cam}, TimeSet.point(2), Value.scalar(2))
    one = Information(
        "one", {a}, TimeSet.point(0), {s}, {cam}, TimeSet.point(1), {r1}, [(s, r1)]
    )
    other = Information(
        "other", {a}, TimeSet.point(0), {s}, {cam}, TimeSet.point(2), {r2}, [(s, r2)]
    )
    with pytest.raises(CombineConflictError):
        combine(one, other)


def test_atoms_canonical_order(pair_info):
    ats = atoms(pair_info)
    assert [a.state.sort_key() for a in ats] == sorted(
        a.state.sort_key() for a in ats
    )


def test_is_copy(pair_info):
    mirror_carrier = objective("mirror")
    mirrored = Information(
        "mirror",
        pair_info.ontology,
        pair_info.occurrence,
        pair_info.states,
        {mirror_carrier},
        pair_info.reflection_time.shift(10),
        {
            ReflectionElement({mirror_carrier}, r.at.shift(10), r.value)
            for r in pair_info.reflections
        },
        [
            (s, ReflectionElement({mirror_carrier}, r.at.shift(10), r.value))
            for s, r in pair_info.mapping
        ],
    )
    assert is_copy(pair_info, mirrored)
    assert not is_copy(pair_info, lossy_info())


def test_promote_rejects_invalid():
    a = objective("a")
    ghost = subjective("ghost")
    s = StateElement({a}, TimeSet.point(0), Value.scalar(1))
    r = ReflectionElement({ghost}, TimeSet.point(1), Value.scalar(1))
    raw = RawMapping(
        "raw", {a}, TimeSet.point(0), {s}, {ghost}, TimeSet.point(1), {r}, [(s, r)]
    )
    with pytest.raises(InvalidInformationError):
        raw.promote()


def test_values_structural_equality():
    assert Value.vector([1, 2]) == Value.vector([Fraction(1), Fraction(2)])
    assert Value.record({"x": Value.scalar(1), "y": Value.symbol("k")}) == Value.record(
        {"y": Value.symbol("k"), "x": Value.scalar(1)}
    )
    assert Value.scalar("1/3").numeric_components() == (Fraction(1, 3),)
    with pytest.raises(ValueError):
        Value.symbol("").sort_key()
