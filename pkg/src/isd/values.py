"""Entity identifiers and the tagged values states can take."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, Mapping

from .timeset import Rational, as_fraction


class Realm(Enum):
    OBJECTIVE = "objective"
    SUBJECTIVE = "subjective"


@dataclass(frozen=True, slots=True)
class EntityId:
    """A named thing in the world; realm records whether it is part of
    objective reality or of some subject's awareness.  Carriers must be
    objective, everything else may live in either realm."""

    id: str
    realm: Realm = Realm.OBJECTIVE

    def __post_init__(self):
        if not self.id:
            raise ValueError("entity id must be nonempty")

    @property
    def is_objective(self) -> bool:
        return self.realm is Realm.OBJECTIVE

    def sort_key(self):
        return (self.id, self.realm.value)


def objective(id: str) -> EntityId:
    return EntityId(id, Realm.OBJECTIVE)


def subjective(id: str) -> EntityId:
    return EntityId(id, Realm.SUBJECTIVE)


_TAG_ORDER = {"symbol": 0, "scalar": 1, "vector": 2, "record": 3}


class Value:
    """Immutable tagged value: symbol, scalar, vector, or record.

    Scalars and vector entries are exact rationals; records map string
    keys to nested Values and are stored as sorted pairs so equality and
    hashing are structural.
    """

    __slots__ = ("tag", "body")

    def __init__(self, tag: str, body):
        if tag not in _TAG_ORDER:
            raise ValueError(f"unknown value tag: {tag!r}")
        object.__setattr__(self, "tag", tag)
        object.__setattr__(self, "body", body)

    def __setattr__(self, *_):
        raise AttributeError("Value is immutable")

    @classmethod
    def symbol(cls, token: str) -> Value:
        if not isinstance(token, str) or not token:
            raise ValueError("symbol token must be a nonempty string")
        return cls("symbol", token)

    @classmethod
    def scalar(cls, q: Rational) -> Value:
        return cls("scalar", as_fraction(q))

    @classmethod
    def vector(cls, qs: Iterable[Rational]) -> Value:
        return cls("vector", tuple(as_fraction(q) for q in qs))

    @classmethod
    def record(cls, entries: Mapping[str, "Value"]) -> Value:
        items = []
        for k in sorted(entries):
            v = entries[k]
            if not isinstance(v, Value):
                raise TypeError("record entries must be Values")
            items.append((k, v))
        return cls("record", tuple(items))

    def numeric_components(self) -> tuple[Fraction, ...]:
        """Flatten to rational coordinates; errors on symbolic content."""
        if self.tag == "scalar":
            return (self.body,)
        if self.tag == "vector":
            return self.body
        if self.tag == "record":
            out = []
            for _, v in self.body:
                out.extend(v.numeric_components())
            return tuple(out)
        raise ValueError(f"symbol value {self.body!r} has no numeric components")

    def sort_key(self):
        if self.tag == "symbol":
            return (0, self.body)
        if self.tag == "scalar":
            return (1, self.body)
        if self.tag == "vector":
            return (2, self.body)
        return (3, tuple((k, v.sort_key()) for k, v in self.body))

    def __eq__(self, other):
        return (
            isinstance(other, Value)
            and self.tag == other.tag
            and self.body == other.body
        )

    def __hash__(self):
        return hash((self.tag, self.body))

    def __repr__(self):
        if self.tag == "record":
            inner = ", ".join(f"{k}={v!r}" for k, v in self.body)
            return f"Value.record({inner})"
        return f"Value.{self.tag}({self.body!r})"
