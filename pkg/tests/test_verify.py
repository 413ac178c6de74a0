"""The self-check battery and its random builders."""

import random

import pytest

from isd.errors import UnresolvedReferenceError
from isd.model import check_chain, collapse_chain, is_reducible, validate
from isd.verify import (
    CHECKS,
    THRESHOLD_NOTE,
    random_chain,
    random_information,
    random_partition_relation,
    run_verify,
)


def test_full_battery_passes_quickly():
    report = run_verify(seed=4, trials=40)
    assert report.ok
    titles = [s.title for s in report.sections]
    for name in CHECKS:
        assert name in titles
    assert report.provenance["seed"] == "4"


def test_battery_deterministic():
    a = run_verify(seed=9, trials=20).to_json()
    b = run_verify(seed=9, trials=20).to_json()
    assert a == b


def test_threshold_note_always_present():
    report = run_verify(seed=0, trials=5, names=["network_value_bounds"])
    assert THRESHOLD_NOTE in report.to_text(color=False)


def test_name_filter_and_unknown_name():
    report = run_verify(seed=0, trials=5, names=["radar_range_scaling"])
    titles = [s.title for s in report.sections]
    assert "radar_range_scaling" in titles
    assert "kalman_min_distortion" not in titles
    with pytest.raises(UnresolvedReferenceError):
        run_verify(names=["palmistry"])


def test_random_information_always_valid():
    rng = random.Random(12)
    for _ in range(50):
        info = random_information(rng)
        assert validate(info) == []
        assert is_reducible(info)


def test_random_chain_links_and_collapses():
    rng = random.Random(5)
    for _ in range(25):
        chain = random_chain(rng)
        assert check_chain(chain) == []
        whole = collapse_chain(chain)
        assert validate(whole) == []


def test_random_partition_relation_is_equivalence():
    rng = random.Random(8)
    for _ in range(25):
        info = random_information(rng)
        rel = random_partition_relation(rng, info)
        assert rel.is_equivalence_over(info.states)
