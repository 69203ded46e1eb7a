"""Exact and log-space combinatorial primitives.

Exact values are plain Python ints (unbounded). Log values are natural logs
as floats.
"""
from __future__ import annotations

import math

import numpy as np
from scipy.special import gammaln

from .errors import DomainError

# Below this n, ln(n!) is taken from the exact integer factorial.
EXACT_FACTORIAL_CUTOFF = 20

_SMALL_LN_FACTORIALS = tuple(
    math.log(math.factorial(n)) for n in range(EXACT_FACTORIAL_CUTOFF)
)

# ln C(n, k) with min(k, n - k) at or below this is summed term by term;
# differencing large ln-factorials would lose the low digits.
_DIRECT_SUM_LIMIT = 64


def _check_nonneg_int(name: str, value) -> int:
    if isinstance(value, bool) or not isinstance(value, (int, np.integer)):
        raise DomainError(f"{name} must be an integer, got {value!r}")
    value = int(value)
    if value < 0:
        raise DomainError(f"{name} must be nonnegative, got {value}")
    return value


def binomial(n: int, k: int) -> int:
    """Exact n-choose-k.

    Raises DomainError when k > n, which almost always means the caller
    mixed up oscillator and energy counts.
    """
    n = _check_nonneg_int("n", n)
    k = _check_nonneg_int("k", k)
    if k > n:
        raise DomainError(f"binomial({n}, {k}): k exceeds n")
    return math.comb(n, k)


def ln_factorial(n: int) -> float:
    n = _check_nonneg_int("n", n)
    if n < EXACT_FACTORIAL_CUTOFF:
        return _SMALL_LN_FACTORIALS[n]
    return math.lgamma(n + 1)


def ln_binomial(n: int, k: int) -> float:
    """Natural log of n-choose-k without forming the integer."""
    n = _check_nonneg_int("n", n)
    k = _check_nonneg_int("k", k)
    if k > n:
        raise DomainError(f"ln_binomial({n}, {k}): k exceeds n")
    m = min(k, n - k)
    if m == 0:
        return 0.0
    if m <= _DIRECT_SUM_LIMIT:
        base = n - m
        return math.fsum(math.log((base + i) / i) for i in range(1, m + 1))
    return ln_factorial(n) - ln_factorial(k) - ln_factorial(n - k)


def ln_factorial_array(n) -> np.ndarray:
    """Vectorised ln(n!) for an integer array."""
    n = np.atleast_1d(np.asarray(n, dtype=np.int64))
    if n.size and n.min() < 0:
        raise DomainError("ln_factorial_array: negative argument")
    out = gammaln(n.astype(np.float64) + 1.0)
    small = n < EXACT_FACTORIAL_CUTOFF
    if np.any(small):
        out[small] = np.take(_SMALL_LN_FACTORIALS, n[small])
    return out
