"""Shared builders for the test suite."""

from __future__ import annotations

from fractions import Fraction

import pytest

from isd.model import Information, ReflectionElement, StateElement
from isd.timeset import TimeSet
from isd.values import Value, objective


def two_atom_info(name: str = "pair", shift: int = 0) -> Information:
    """Two states on distinct subjects, each copied to the same camera one
    time unit later.  Reducible, delay 2, all components minimal.  A
    nonzero shift slides the whole thing along the time axis, giving
    informations that differ only in their time sets."""
    a, b, cam = objective("a"), objective("b"), objective("cam")
    s1 = StateElement({a}, TimeSet.point(0 + shift), Value.scalar(1))
    s2 = StateElement({b}, TimeSet.point(1 + shift), Value.scalar(2))
    r1 = ReflectionElement({cam}, TimeSet.point(2 + shift), Value.scalar(1))
    r2 = ReflectionElement({cam}, TimeSet.point(3 + shift), Value.scalar(2))
    return Information(
        name,
        {a, b},
        TimeSet.from_points([0 + shift, 1 + shift]),
        {s1, s2},
        {cam},
        TimeSet.from_points([2 + shift, 3 + shift]),
        {r1, r2},
        [(s1, r1), (s2, r2)],
    )


def lossy_info(name: str = "lossy") -> Information:
    """Two states funneled onto one reflection: valid but not reducible."""
    a, b, cam = objective("a"), objective("b"), objective("cam")
    s1 = StateElement({a}, TimeSet.point(0), Value.scalar(1))
    s2 = StateElement({b}, TimeSet.point(1), Value.scalar(2))
    r = ReflectionElement({cam}, TimeSet.point(2), Value.symbol("blur"))
    return Information(
        name,
        {a, b},
        TimeSet.from_points([0, 1]),
        {s1, s2},
        {cam},
        TimeSet.point(2),
        {r},
        [(s1, r), (s2, r)],
    )


@pytest.fixture
def pair_info() -> Information:
    return two_atom_info()


def frac(s) -> Fraction:
    return Fraction(s)
