"""Random energy-unit exchange between oscillators of two coupled solids.

One step picks a donor oscillator uniformly among all of them. An empty
donor leaves the state unchanged; otherwise one unit moves to a recipient
also picked uniformly among all oscillators (possibly the donor itself).
The kernel is symmetric, so every composition of the energy is equally
likely at stationarity and the histogram of ``q_A`` should approach the
exact macrostate distribution.
"""
from __future__ import annotations

from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import kernels
from .errors import DomainError
from .solids import CoupledSolids, MacrostateDistribution

RNG_ALGORITHM = "numpy.random.PCG64"
# Random indices are drawn in blocks of this many steps. Part of the
# reproducibility contract: changing it changes every seeded result.
CHUNK_STEPS = 1 << 16
PRESETS = ("all-in-B", "all-in-A", "even")


@dataclass(frozen=True)
class MicrostateComposition:
    """Energy per oscillator, solid A's oscillators first."""

    energies: tuple[int, ...]
    n_a: int

    def __post_init__(self):
        energies = tuple(int(e) for e in self.energies)
        object.__setattr__(self, "energies", energies)
        if any(e < 0 for e in energies):
            raise DomainError("oscillator energies must be nonnegative")
        if not 0 <= self.n_a <= len(energies):
            raise DomainError("n_a must lie between 0 and the oscillator count")

    @property
    def q_total(self) -> int:
        return sum(self.energies)

    @property
    def q_a(self) -> int:
        return sum(self.energies[: self.n_a])

    @property
    def n_oscillators(self) -> int:
        return len(self.energies)


def _round_robin(q: int, slots: int) -> list[int]:
    base, extra = divmod(q, slots)
    return [base + (i < extra) for i in range(slots)]


def initial_state(sys: CoupledSolids, preset: str = "all-in-B") -> MicrostateComposition:
    """Named starting points; energy is spread round-robin within a solid."""
    q = sys.q_total
    if preset == "all-in-B":
        energies = [0] * sys.n_a + _round_robin(q, sys.n_b)
    elif preset == "all-in-A":
        energies = _round_robin(q, sys.n_a) + [0] * sys.n_b
    elif preset == "even":
        energies = _round_robin(q, sys.n_oscillators)
    else:
        raise DomainError(f"unknown initial preset {preset!r}; choose from {PRESETS}")
    return MicrostateComposition(tuple(energies), sys.n_a)


def mc_step(state: MicrostateComposition, rng: np.random.Generator) -> MicrostateComposition:
    n = state.n_oscillators
    donor = int(rng.integers(n))
    if state.energies[donor] == 0:
        return state
    recipient = int(rng.integers(n))
    energies = list(state.energies)
    energies[donor] -= 1
    energies[recipient] += 1
    return MicrostateComposition(tuple(energies), state.n_a)


@dataclass(frozen=True)
class ChainConfig:
    steps: int
    burn_in: int = 10_000
    seed: int = 0
    sample_stride: int = 10

    def __post_init__(self):
        if self.steps < 1:
            raise DomainError("steps must be positive")
        if not 0 <= self.burn_in < self.steps:
            raise DomainError("burn_in must satisfy 0 <= burn_in < steps")
        if self.sample_stride < 1:
            raise DomainError("sample_stride must be at least 1")
        if not 0 <= self.seed < 2**64:
            raise DomainError("seed must be an unsigned 64-bit integer")

    @property
    def n_samples(self) -> int:
        return (self.steps - self.burn_in) // self.sample_stride


@dataclass(frozen=True, eq=False)
class ChainResult:
    histogram: np.ndarray
    trace: np.ndarray
    steps: int
    final_state: MicrostateComposition
    seed: int
    backend: str
    rng_algorithm: str = RNG_ALGORITHM

    @property
    def n_samples(self) -> int:
        return int(self.histogram.sum())

    def frequencies(self) -> np.ndarray:
        return self.histogram / self.histogram.sum()


def _resolve_initial(sys, initial) -> MicrostateComposition:
    if isinstance(initial, str):
        return initial_state(sys, initial)
    if initial.n_oscillators != sys.n_oscillators or initial.n_a != sys.n_a:
        raise DomainError("initial state does not match the solids' oscillator counts")
    if initial.q_total != sys.q_total:
        raise DomainError(
            f"initial state holds {initial.q_total} units, system has {sys.q_total}"
        )
    return initial


def run_chain(
    sys: CoupledSolids,
    initial: MicrostateComposition | str,
    config: ChainConfig,
    backend: str | None = None,
) -> ChainResult:
    """Run one chain; the result depends only on ``initial`` and ``config``."""
    state = _resolve_initial(sys, initial)
    kernel = kernels.get_kernel(backend)
    energies = np.array(state.energies, dtype=np.int64)
    hist = np.zeros(sys.q_total + 1, dtype=np.int64)
    trace = np.empty(config.n_samples, dtype=np.int64)
    rng = np.random.Generator(np.random.PCG64(config.seed))
    n = sys.n_oscillators
    q_a, n_samples, done = state.q_a, 0, 0
    while done < config.steps:
        k = min(CHUNK_STEPS, config.steps - done)
        draws = rng.integers(0, n, size=(k, 2), dtype=np.int64)
        q_a, n_samples = kernel(
            energies, sys.n_a, draws, done, config.burn_in,
            config.sample_stride, q_a, hist, trace, n_samples,
        )
        done += k
    assert n_samples == config.n_samples
    return ChainResult(
        histogram=hist,
        trace=trace,
        steps=done,
        final_state=MicrostateComposition(tuple(energies.tolist()), sys.n_a),
        seed=config.seed,
        backend=backend or kernels.BACKEND,
    )


def run_chains(
    sys: CoupledSolids,
    initial: MicrostateComposition | str,
    config: ChainConfig,
    seeds: Sequence[int],
    workers: int | None = None,
    backend: str | None = None,
) -> list[ChainResult]:
    """Independent chains, one per seed, returned in ascending seed order."""
    seeds = sorted(seeds)
    configs = [
        ChainConfig(config.steps, config.burn_in, s, config.sample_stride) for s in seeds
    ]

    def one(cfg):
        return run_chain(sys, initial, cfg, backend=backend)

    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(one, configs))
    return [one(cfg) for cfg in configs]


def tv_distance(empirical, exact) -> float:
    """Total variation distance between a histogram and a distribution.

    ``empirical`` is counts (or frequencies) indexed by ``q_A``; ``exact`` a
    MacrostateDistribution or a probability vector over the same range.
    """
    counts = np.asarray(empirical, dtype=np.float64)
    probs = exact.probability if isinstance(exact, MacrostateDistribution) else exact
    probs = np.asarray(probs, dtype=np.float64)
    if counts.shape != probs.shape:
        raise DomainError(
            f"support mismatch: histogram has {counts.size} bins, distribution {probs.size}"
        )
    total = counts.sum()
    if total <= 0:
        raise DomainError("empty histogram")
    return float(0.5 * np.abs(counts / total - probs).sum())


def composition_histogram(
    n_oscillators: int, q_total: int, steps: int, seed: int = 0, burn_in: int = 0
) -> Counter:
    """Visit counts of every full composition, one sample per step after burn-in.

    Uses the same move rule and draw scheme as :func:`run_chain` but tracks
    the whole energy vector, so it stays in Python and suits small systems.
    """
    energies = _round_robin(q_total, n_oscillators)
    rng = np.random.Generator(np.random.PCG64(seed))
    counts: Counter = Counter()
    done = 0
    while done < steps:
        k = min(CHUNK_STEPS, steps - done)
        for donor, recipient in rng.integers(0, n_oscillators, size=(k, 2)).tolist():
            if energies[donor]:
                energies[donor] -= 1
                energies[recipient] += 1
            done += 1
            if done > burn_in:
                counts[tuple(energies)] += 1
    return counts
