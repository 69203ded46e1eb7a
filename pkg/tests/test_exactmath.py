import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from emergent.errors import DomainError
from emergent.exactmath import (
    binomial,
    ln_binomial,
    ln_factorial,
    ln_factorial_array,
)


def pascal_rows(n_max):
    rows = [[1]]
    for n in range(1, n_max + 1):
        prev = rows[-1]
        rows.append([1] + [prev[k - 1] + prev[k] for k in range(1, n)] + [1])
    return rows


def test_binomial_known_values():
    assert binomial(8, 6) == 28
    assert binomial(5, 3) == 10
    assert binomial(0, 0) == 1
    assert binomial(1000, 0) == 1


def test_binomial_rejects_k_above_n():
    with pytest.raises(DomainError):
        binomial(3, 4)
    with pytest.raises(DomainError):
        ln_binomial(3, 4)


@pytest.mark.parametrize("bad", [-1, 2.5, True])
def test_binomial_rejects_non_naturals(bad):
    with pytest.raises(DomainError):
        binomial(bad, 0)


def test_binomial_is_exact_for_huge_arguments():
    value = binomial(600, 300)
    assert value == math.factorial(600) // (math.factorial(300) ** 2)
    assert value.bit_length() > 500


def test_binomial_matches_pascal_triangle():
    rows = pascal_rows(120)
    for n, row in enumerate(rows):
        assert [binomial(n, k) for k in range(n + 1)] == row


@given(st.integers(2, 200), st.data())
def test_pascal_identity(n, data):
    k = data.draw(st.integers(1, n - 1))
    assert binomial(n, k) == binomial(n - 1, k - 1) + binomial(n - 1, k)


@given(st.integers(0, 300), st.data())
def test_symmetry(n, data):
    k = data.draw(st.integers(0, n))
    assert binomial(n, k) == binomial(n, n - k)


def test_ln_factorial_small():
    assert ln_factorial(0) == 0
    assert ln_factorial(1) == 0
    assert ln_factorial(10) == pytest.approx(math.log(math.factorial(10)), rel=1e-15)


@pytest.mark.parametrize("n", [19, 20, 21, 50, 170, 1000, 12345, 10**6])
def test_ln_factorial_against_exact_integer(n):
    if n <= 10**5:
        expected = math.log(math.factorial(n))
    else:
        # Correctly rounded sum of logs; the integer factorial is too slow here.
        expected = math.fsum(math.log(i) for i in range(2, n + 1))
    assert abs(ln_factorial(n) - expected) <= 1e-10 * max(1.0, expected)


def test_ln_factorial_array_matches_scalar():
    ns = np.array([0, 1, 5, 19, 20, 21, 300, 9999])
    got = ln_factorial_array(ns)
    want = [ln_factorial(int(n)) for n in ns]
    np.testing.assert_allclose(got, want, rtol=1e-14, atol=0)


def test_ln_binomial_examples():
    assert ln_binomial(8, 6) == pytest.approx(math.log(28), rel=1e-14)
    assert ln_binomial(17, 0) == 0
    exact = math.log(binomial(600, 300))
    assert abs(ln_binomial(600, 300) - exact) <= 1e-9 * exact


def test_ln_binomial_cross_representation_exhaustive():
    # math.log on the exact integer is the oracle.
    worst = 0.0
    for n in range(301):
        for k in range(n + 1):
            exact = math.log(binomial(n, k))
            err = abs(ln_binomial(n, k) - exact) / max(1.0, exact)
            worst = max(worst, err)
    assert worst <= 1e-9


@pytest.mark.parametrize("n,k", [(10**6, 3), (10**9, 2), (10**9, 10**4)])
def test_ln_binomial_stays_accurate_for_large_n(n, k):
    exact = math.log(math.comb(n, k))
    assert abs(ln_binomial(n, k) - exact) <= 1e-9 * exact
