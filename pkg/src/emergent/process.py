"""Classification of finite-outcome processes and aggregate predictability.

A process is deterministic when one outcome is certain, random when every
outcome is equally likely, and partially deterministic otherwise: it can
only be predicted in the aggregate, the way a casino budgets on a game
whose single plays it cannot call.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Any, Hashable, Mapping, Sequence

from .errors import DomainError

DEFAULT_EPS = 1e-9
_SUM_TOL = 1e-12


class ProcessClass(enum.Enum):
    DETERMINISTIC = "deterministic"
    RANDOM = "random"
    PARTIALLY_DETERMINISTIC = "partially deterministic"


def _as_exact(x) -> Fraction:
    # Floats go through their shortest repr so that 0.505 becomes 101/200.
    if isinstance(x, Rational):
        return Fraction(x)
    if isinstance(x, float):
        if not math.isfinite(x):
            raise DomainError(f"non-finite value {x!r}")
        return Fraction(repr(x))
    return Fraction(str(x))


@dataclass(frozen=True)
class OutcomeDistribution:
    """Finite list of distinct labels with probabilities summing to one.

    Probabilities may be floats or exact rationals; exact inputs keep
    downstream expectations exact.
    """

    outcomes: tuple[tuple[Hashable, Any], ...]

    def __post_init__(self):
        outcomes = tuple((label, p) for label, p in self.outcomes)
        object.__setattr__(self, "outcomes", outcomes)
        if not outcomes:
            raise DomainError("distribution needs at least one outcome")
        labels = [label for label, _ in outcomes]
        if len(set(labels)) != len(labels):
            raise DomainError("outcome labels must be distinct")
        for label, p in outcomes:
            if not 0 <= p <= 1:
                raise DomainError(f"probability of {label!r} outside [0, 1]: {p}")
        total = sum(_as_exact(p) for _, p in outcomes)
        if abs(float(total) - 1.0) > _SUM_TOL:
            raise DomainError(f"probabilities sum to {float(total)!r}, not 1")

    @classmethod
    def from_mapping(cls, probs: Mapping[Hashable, Any]) -> "OutcomeDistribution":
        return cls(tuple(probs.items()))

    @classmethod
    def uniform(cls, labels: Sequence[Hashable]) -> "OutcomeDistribution":
        n = len(labels)
        return cls(tuple((label, Fraction(1, n)) for label in labels))

    @property
    def labels(self) -> list:
        return [label for label, _ in self.outcomes]

    @property
    def probabilities(self) -> list:
        return [p for _, p in self.outcomes]

    def __len__(self) -> int:
        return len(self.outcomes)


@dataclass(frozen=True)
class WagerStructure:
    """Net payoff to the house for each outcome label, and plays per period."""

    payoffs: Mapping[Hashable, Any]
    plays_per_period: int = 1

    def __post_init__(self):
        if int(self.plays_per_period) != self.plays_per_period or self.plays_per_period < 1:
            raise DomainError("plays_per_period must be a positive integer")
        object.__setattr__(self, "payoffs", dict(self.payoffs))


def classify(dist: OutcomeDistribution, eps: float = DEFAULT_EPS) -> ProcessClass:
    n = len(dist)
    if not 0 < eps < 1 / (2 * n):
        raise DomainError(f"eps must lie in (0, 1/{2 * n}), got {eps}")
    probs = [float(p) for p in dist.probabilities]
    if any(p >= 1 - eps for p in probs):
        return ProcessClass.DETERMINISTIC
    if n > 1 and all(abs(p - 1 / n) <= eps for p in probs):
        return ProcessClass.RANDOM
    return ProcessClass.PARTIALLY_DETERMINISTIC


def _per_play(dist: OutcomeDistribution, wager: WagerStructure):
    rows = []
    for label, p in dist.outcomes:
        try:
            pay = wager.payoffs[label]
        except KeyError:
            raise DomainError(f"no payoff given for outcome {label!r}") from None
        rows.append((_as_exact(p), _as_exact(pay)))
    return rows


def expected_house_profit(dist: OutcomeDistribution, wager: WagerStructure) -> Fraction:
    """Expected net house take over one period, as an exact rational."""
    mean = sum(p * pay for p, pay in _per_play(dist, wager))
    return wager.plays_per_period * mean


def expected_house_flows(
    dist: OutcomeDistribution, wager: WagerStructure
) -> tuple[Fraction, Fraction]:
    """Split the expected profit into money kept and money paid out.

    Returns ``(kept, paid)``, both nonnegative, with
    ``kept - paid == expected_house_profit(dist, wager)``.
    """
    kept = paid = Fraction(0)
    for p, pay in _per_play(dist, wager):
        if pay > 0:
            kept += p * pay
        else:
            paid -= p * pay
    n = wager.plays_per_period
    return n * kept, n * paid


def profit_variance(dist: OutcomeDistribution, wager: WagerStructure) -> Fraction:
    rows = _per_play(dist, wager)
    mean = sum(p * pay for p, pay in rows)
    second = sum(p * pay * pay for p, pay in rows)
    return wager.plays_per_period * (second - mean * mean)


def max_outcome_probability(dist: OutcomeDistribution) -> tuple[Hashable, Any]:
    """Most likely outcome and its probability; ties go to the earliest label."""
    best_label, best_p = dist.outcomes[0]
    for label, p in dist.outcomes[1:]:
        if p > best_p:
            best_label, best_p = label, p
    return best_label, best_p
