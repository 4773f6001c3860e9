import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from dirlab import sieve as sv
from dirlab.exceptions import CapacityError


def trial_factor(n):
    out, p = [], 2
    while p * p <= n:
        a = 0
        while n % p == 0:
            n //= p
            a += 1
        if a:
            out.append((p, a))
        p += 1
    if n > 1:
        out.append((n, 1))
    return out


def naive_sigma(n):
    return sum(d for d in range(1, n + 1) if n % d == 0)


def naive_dk(n, k):
    if k == 1:
        return 1
    return sum(naive_dk(n // d, k - 1) for d in range(1, n + 1) if n % d == 0)


def test_spf_matches_trial_division(small_sieve):
    for n in range(2, 3000):
        assert small_sieve.spf[n] == trial_factor(n)[0][0]
    assert small_sieve.spf[1] == 1 and small_sieve.spf[0] == 0


def test_prime_counts(sieve):
    assert sieve.prime_count(100) == 25
    assert sieve.prime_count(10**4) == 1229
    assert sieve.prime_count(10**6) == 78498
    assert sieve.nth_prime(1) == 2
    assert sieve.nth_prime(78498) == 999983


def test_table_is_read_only(small_sieve):
    with pytest.raises(ValueError):
        small_sieve.spf[5] = 4


def test_sigma_and_divisor_tables_against_naive(small_sieve):
    sig = small_sieve.sigma_table(600)
    d2 = small_sieve.divisor_count_table(2, 600)
    d3 = small_sieve.divisor_count_table(3, 200)
    for n in range(1, 601):
        assert sig[n] == naive_sigma(n)
        assert d2[n] == naive_dk(n, 2)
    for n in range(1, 201):
        assert d3[n] == naive_dk(n, 3)


def test_omega_tables(small_sieve):
    big, small, largest = small_sieve.omega_tables(1000)
    assert (big[1], small[1], largest[1]) == (0, 0, 1)
    for n in range(2, 1001):
        f = trial_factor(n)
        assert big[n] == sum(a for _, a in f)
        assert small[n] == len(f)
        assert largest[n] == f[-1][0]
        assert sv.omega_counts(small_sieve, n) == (big[n], small[n], largest[n])


@settings(max_examples=200, deadline=None)
@given(n=st.integers(1, 10**6))
def test_factorize_roundtrip(n, sieve):
    f = sv.factorize(sieve, n)
    assert f.value == n
    assert list(f.factors) == trial_factor(n)
    assert math.isclose(f.log_value, math.log(n), rel_tol=1e-14, abs_tol=1e-14)


@settings(max_examples=50, deadline=None)
@given(n=st.integers(1, 5000), k=st.integers(1, 4))
def test_divisor_count_k_matches_recursion(n, k, small_sieve):
    assert sv.divisor_count_k(small_sieve, n, k) == naive_dk(n, k)


def test_sigma_of_large_factored_integer():
    x = sv.FactoredInteger(((2, 10), (3, 4), (5, 2), (7, 1)))
    assert x.value == 2**10 * 81 * 25 * 7
    assert x.sigma() == naive_sigma(x.value)
    assert math.isclose(x.sigma_ratio(), x.sigma() / x.value, rel_tol=1e-14)
    with pytest.raises(ValueError):
        sv.FactoredInteger(((3, 1), (2, 1)))


def restricted_brute(m, k, N):
    from itertools import product

    return sum(1 for t in product(range(1, N + 1), repeat=k) if math.prod(t) == m)


@pytest.mark.parametrize("k,N", [(1, 5), (2, 4), (3, 3), (2, 7), (4, 3)])
def test_restricted_table_against_brute_force(k, N, small_sieve):
    table = sv.restricted_divisor_table(k, N)
    assert table.size == N**k + 1
    for m in range(1, N**k + 1):
        want = restricted_brute(m, k, N)
        assert table[m] == want
        assert sv.restricted_divisor_count(small_sieve, m, k, N) == want
    assert table.sum() == N**k


def test_restricted_table_guard():
    with pytest.raises(CapacityError):
        sv.restricted_divisor_table(9, 10)


def test_harmonic_numbers():
    from fractions import Fraction

    exact = float(sum(Fraction(1, j) for j in range(1, 201)))
    assert sv.harmonic_number(200) == pytest.approx(exact, rel=1e-15)
    h = sv.harmonic_numbers(10**6)
    assert h[10**6] == pytest.approx(math.log(10**6) + 0.5772156649015329 + 0.5e-6, abs=1e-12)


def test_cache_roundtrip(tmp_path, monkeypatch):
    s = sv.build_sieve(5000)
    path = tmp_path / "s.dlsv"
    sv.save_sieve(s, path)
    back = sv.load_sieve(path)
    assert back.limit == 5000 and np.array_equal(back.spf, s.spf)
    path.write_bytes(b"junk")
    with pytest.raises(ValueError):
        sv.load_sieve(path)
    monkeypatch.setenv("DIRLAB_SIEVE_CACHE", str(tmp_path / "cache"))
    first = sv.cached_sieve(3000)
    again = sv.cached_sieve(2000)
    assert again.limit >= 2000 and np.array_equal(again.spf[:2001], first.spf[:2001])


def test_range_errors(small_sieve):
    with pytest.raises(ValueError):
        sv.factorize(small_sieve, 10**4 + 1)
    with pytest.raises(ValueError):
        small_sieve.sigma_table(10**5)
    with pytest.raises(ValueError):
        sv.build_sieve(1)
