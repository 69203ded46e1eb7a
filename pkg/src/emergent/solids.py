"""Einstein solids and the macrostate distribution of two coupled solids.

A solid of N oscillators holding q indivisible energy units has
``C(q + N - 1, q)`` microstates. Two weakly coupled solids A and B sharing
``q_total`` units are described by the macrostate ``q_A``; every joint
microstate is equally likely, so ``P(q_A)`` is proportional to
``Omega_A(q_A) * Omega_B(q_total - q_A)``.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from . import exactmath
from .errors import DomainError, ResourceError

EXACT_CAP = 10**5
LOG_CAP = 10**9


def _positive(name, value) -> int:
    if isinstance(value, bool) or int(value) != value or value < 1:
        raise DomainError(f"{name} must be a positive integer, got {value!r}")
    return int(value)


def _nonneg(name, value) -> int:
    if isinstance(value, bool) or int(value) != value or value < 0:
        raise DomainError(f"{name} must be a nonnegative integer, got {value!r}")
    return int(value)


@dataclass(frozen=True)
class EinsteinSolid:
    n: int
    q: int

    def __post_init__(self):
        object.__setattr__(self, "n", _positive("N", self.n))
        object.__setattr__(self, "q", _nonneg("q", self.q))


@dataclass(frozen=True)
class CoupledSolids:
    n_a: int
    n_b: int
    q_total: int

    def __post_init__(self):
        object.__setattr__(self, "n_a", _positive("N_A", self.n_a))
        object.__setattr__(self, "n_b", _positive("N_B", self.n_b))
        object.__setattr__(self, "q_total", _nonneg("q", self.q_total))

    @property
    def n_oscillators(self) -> int:
        return self.n_a + self.n_b

    def scaled(self, factor: int) -> "CoupledSolids":
        factor = _positive("factor", factor)
        return CoupledSolids(factor * self.n_a, factor * self.n_b, factor * self.q_total)


def multiplicity(solid: EinsteinSolid) -> int:
    return exactmath.binomial(solid.q + solid.n - 1, solid.q)


def ln_multiplicity(solid: EinsteinSolid) -> float:
    return exactmath.ln_binomial(solid.q + solid.n - 1, solid.q)


@dataclass(frozen=True)
class DistributionRow:
    q_a: int
    q_b: int
    omega_a: int | None
    omega_b: int | None
    omega_tot: int | None
    ln_omega_a: float
    ln_omega_b: float
    ln_omega_tot: float
    probability: float


@dataclass(frozen=True, eq=False)
class MacrostateDistribution:
    """``P(q_A)`` for ``q_A = 0..q_total``.

    The exact integer columns (``omega_a``, ``omega_b``, ``omega_tot``,
    ``total``) are ``None`` when the distribution was built in log space.
    """

    system: CoupledSolids
    log_space: bool
    q_a: np.ndarray
    ln_omega_a: np.ndarray
    ln_omega_b: np.ndarray
    ln_omega_tot: np.ndarray
    probability: np.ndarray
    ln_total: float
    omega_a: tuple[int, ...] | None = None
    omega_b: tuple[int, ...] | None = None
    omega_tot: tuple[int, ...] | None = None
    total: int | None = None

    def __len__(self) -> int:
        return len(self.q_a)

    def rows(self) -> Iterator[DistributionRow]:
        q = self.system.q_total
        for i in range(len(self.q_a)):
            yield DistributionRow(
                q_a=i,
                q_b=q - i,
                omega_a=None if self.omega_a is None else self.omega_a[i],
                omega_b=None if self.omega_b is None else self.omega_b[i],
                omega_tot=None if self.omega_tot is None else self.omega_tot[i],
                ln_omega_a=float(self.ln_omega_a[i]),
                ln_omega_b=float(self.ln_omega_b[i]),
                ln_omega_tot=float(self.ln_omega_tot[i]),
                probability=float(self.probability[i]),
            )


def _multiplicity_column(n: int, q_max: int) -> list[int]:
    # Omega(n, k+1) = Omega(n, k) * (k + n) / (k + 1), exact in integers.
    col = [1]
    for k in range(q_max):
        col.append(col[-1] * (k + n) // (k + 1))
    return col


def _exact_distribution(sys: CoupledSolids, cap: int) -> MacrostateDistribution:
    q = sys.q_total
    size = q + max(sys.n_a, sys.n_b)
    if size > cap:
        raise ResourceError(
            f"exact mode limited to q + max(N_A, N_B) <= {cap} (got {size}); "
            "use log-space mode"
        )
    omega_a = _multiplicity_column(sys.n_a, q)
    omega_b = _multiplicity_column(sys.n_b, q)[::-1]
    omega_tot = [a * b for a, b in zip(omega_a, omega_b)]
    total = sum(omega_tot)
    # int / int is correctly rounded however large the operands are.
    prob = np.array([t / total for t in omega_tot])
    ln_a = np.array([math.log(x) for x in omega_a])
    ln_b = np.array([math.log(x) for x in omega_b])
    return MacrostateDistribution(
        system=sys,
        log_space=False,
        q_a=np.arange(q + 1, dtype=np.int64),
        ln_omega_a=ln_a,
        ln_omega_b=ln_b,
        ln_omega_tot=ln_a + ln_b,
        probability=prob,
        ln_total=math.log(total),
        omega_a=tuple(omega_a),
        omega_b=tuple(omega_b),
        omega_tot=tuple(omega_tot),
        total=total,
    )


def _ln_omega_column(n: int, q: np.ndarray) -> np.ndarray:
    lf = exactmath.ln_factorial_array
    return lf(q + n - 1) - lf(q) - lf(np.array([n - 1]))[0]


def _log_distribution(sys: CoupledSolids) -> MacrostateDistribution:
    largest = max(sys.q_total, sys.n_a, sys.n_b)
    if largest > LOG_CAP:
        raise ResourceError(f"log-space mode limited to N, q <= {LOG_CAP}")
    q_a = np.arange(sys.q_total + 1, dtype=np.int64)
    ln_a = _ln_omega_column(sys.n_a, q_a)
    ln_b = _ln_omega_column(sys.n_b, sys.q_total - q_a)
    ln_tot = ln_a + ln_b
    shift = ln_tot.max()
    weights = np.exp(ln_tot - shift)
    norm = weights.sum()
    return MacrostateDistribution(
        system=sys,
        log_space=True,
        q_a=q_a,
        ln_omega_a=ln_a,
        ln_omega_b=ln_b,
        ln_omega_tot=ln_tot,
        probability=weights / norm,
        ln_total=float(shift + math.log(norm)),
    )


def macrostate_distribution(
    sys: CoupledSolids, mode: str = "exact", exact_cap: int = EXACT_CAP
) -> MacrostateDistribution:
    """Distribution of the energy held by solid A.

    ``mode="exact"`` keeps every multiplicity as an integer and raises
    ResourceError beyond ``exact_cap``; ``mode="log"`` works with natural
    logs and normalises after subtracting the largest row.
    """
    if mode == "exact":
        return _exact_distribution(sys, exact_cap)
    if mode in ("log", "log-space"):
        return _log_distribution(sys)
    raise DomainError(f"unknown mode {mode!r}; expected 'exact' or 'log'")


@dataclass(frozen=True)
class PeakStats:
    mean: float
    std: float
    relative_width: float
    fwhm: float


def _half_max_crossing(p: np.ndarray, peak: int, half: float, step: int) -> float:
    i = peak
    end = 0 if step < 0 else len(p) - 1
    while i != end and p[i + step] >= half:
        i += step
    if i == end:
        return float(i)
    j = i + step
    # Linear interpolation between the last point above and first below.
    return j + (half - p[j]) / (p[i] - p[j]) * (i - j)


def _fwhm(p: np.ndarray) -> float:
    peak = int(np.argmax(p))
    half = p[peak] / 2
    left = _half_max_crossing(p, peak, half, -1)
    right = _half_max_crossing(p, peak, half, +1)
    return float(right - left)


def peak_stats(dist: MacrostateDistribution) -> PeakStats:
    """Probability-weighted mean and spread of ``q_A``.

    Exact distributions get their moments from integer sums, so a symmetric
    system reports a mean of exactly ``q_total / 2``. The FWHM interpolates
    linearly between neighbouring ``q_A`` at half the peak probability and
    is clamped to the ends of the range.
    """
    q = dist.system.q_total
    if dist.omega_tot is not None:
        total = dist.total
        s1 = sum(i * w for i, w in enumerate(dist.omega_tot))
        s2 = sum(i * i * w for i, w in enumerate(dist.omega_tot))
        mean = s1 / total
        var = (s2 * total - s1 * s1) / (total * total)
    else:
        p = dist.probability
        x = dist.q_a.astype(np.float64)
        mean = float(np.dot(p, x))
        var = float(np.dot(p, (x - mean) ** 2))
    std = math.sqrt(max(var, 0.0))
    return PeakStats(
        mean=mean,
        std=std,
        relative_width=std / q if q else 0.0,
        fwhm=_fwhm(dist.probability),
    )


def scaling_sweep(
    base: CoupledSolids, factors: Sequence[int], workers: int | None = None
) -> list[tuple[int, PeakStats]]:
    """Peak statistics of ``base`` with N_A, N_B and q all multiplied by each factor.

    Every point uses log-space mode. Output order follows ``factors``
    whatever the worker count.
    """
    factors = list(factors)
    if not factors:
        raise DomainError("need at least one scaling factor")

    def one(f):
        return f, peak_stats(macrostate_distribution(base.scaled(f), mode="log"))

    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(one, factors))
    return [one(f) for f in factors]


def thermodynamic_limit_reached(stats: PeakStats, threshold: float) -> bool:
    if not threshold > 0:
        raise DomainError(f"threshold must be positive, got {threshold}")
    return stats.relative_width < threshold
