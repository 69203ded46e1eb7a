"""Microstates and macrostate tables for sets of distinguishable dice."""
from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from numbers import Number
from typing import Callable, Hashable, Iterator, Mapping, Sequence, Union

from .errors import DomainError, ResourceError
from .process import OutcomeDistribution

ENUMERATION_CAP = 10**7

DiceMicrostate = tuple


@dataclass(frozen=True)
class DieSpec:
    faces: int
    labels: tuple = ()

    def __post_init__(self):
        if int(self.faces) != self.faces or self.faces < 1:
            raise DomainError(f"a die needs at least one face, got {self.faces!r}")
        labels = tuple(self.labels) or tuple(range(1, self.faces + 1))
        if len(labels) != self.faces:
            raise DomainError(
                f"die with {self.faces} faces given {len(labels)} labels"
            )
        object.__setattr__(self, "labels", labels)


@dataclass(frozen=True)
class MacrostateRow:
    macrostate: Hashable
    multiplicity: int
    probability: Fraction


@dataclass(frozen=True)
class MacrostateTable:
    rows: tuple[MacrostateRow, ...]
    total: int

    def __iter__(self) -> Iterator[MacrostateRow]:
        return iter(self.rows)

    def __len__(self) -> int:
        return len(self.rows)

    def row(self, macrostate) -> MacrostateRow:
        for r in self.rows:
            if r.macrostate == macrostate:
                return r
        raise KeyError(macrostate)

    def multiplicities(self) -> dict:
        return {r.macrostate: r.multiplicity for r in self.rows}

    def to_distribution(self) -> OutcomeDistribution:
        return OutcomeDistribution(tuple((r.macrostate, r.probability) for r in self.rows))


MacrostateMap = Union[Callable[[tuple], Hashable], Mapping[tuple, Hashable]]


def _as_dice(dice) -> list[DieSpec]:
    dice = [d if isinstance(d, DieSpec) else DieSpec(d) for d in dice]
    if not dice:
        raise DomainError("need at least one die")
    return dice


def microstate_count(dice: Sequence[DieSpec]) -> int:
    return math.prod(d.faces for d in _as_dice(dice))


def enumerate_microstates(
    dice: Sequence[DieSpec], cap: int = ENUMERATION_CAP
) -> list[DiceMicrostate]:
    """Every joint outcome, in lexicographic order of face position.

    Raises ResourceError if there are more than ``cap`` microstates; use
    :func:`macrostate_table` with the sum mapping, which counts instead.
    """
    dice = _as_dice(dice)
    count = microstate_count(dice)
    if count > cap:
        raise ResourceError(
            f"{count} microstates exceed the enumeration cap of {cap}"
        )
    return list(itertools.product(*(d.labels for d in dice)))


def _sum_counts(dice: Sequence[DieSpec]) -> Counter:
    # Convolve face-sum generating functions; never touches individual microstates.
    counts = Counter({0: 1})
    for d in dice:
        nxt = Counter()
        for label in d.labels:
            if not isinstance(label, Number):
                raise DomainError(f"sum mapping needs numeric labels, got {label!r}")
            for s, c in counts.items():
                nxt[s + label] += c
        counts = nxt
    return counts


def _sorted_keys(keys):
    keys = list(keys)
    try:
        return sorted(keys)
    except TypeError:
        return keys


def _build(counts: Mapping, total: int) -> MacrostateTable:
    rows = tuple(
        MacrostateRow(key, counts[key], Fraction(counts[key], total))
        for key in _sorted_keys(counts)
    )
    return MacrostateTable(rows, total)


def identity_mapping(microstate: tuple) -> tuple:
    return tuple(microstate)


def macrostate_table(
    dice: Sequence[DieSpec],
    mapping: MacrostateMap | None = None,
    cap: int = ENUMERATION_CAP,
) -> MacrostateTable:
    """Group microstates by macrostate and count them.

    With ``mapping=None`` the macrostate is the sum of face labels, counted
    by convolution. Any other mapping (a callable or a dict keyed by
    microstate) enumerates the microstates and is subject to ``cap``.
    """
    dice = _as_dice(dice)
    total = microstate_count(dice)
    if mapping is None:
        return _build(_sum_counts(dice), total)

    lookup = mapping.__getitem__ if isinstance(mapping, Mapping) else mapping
    counts: Counter = Counter()
    for micro in enumerate_microstates(dice, cap=cap):
        try:
            key = lookup(micro)
        except (KeyError, LookupError, TypeError, ValueError) as exc:
            raise DomainError(f"mapping undefined on microstate {micro!r}") from exc
        if key is None:
            raise DomainError(f"mapping undefined on microstate {micro!r}")
        counts[key] += 1
    # Rows follow first appearance in enumeration order unless labels sort.
    return _build(counts, total)


def sum_mapping(microstate: tuple):
    return sum(microstate)
