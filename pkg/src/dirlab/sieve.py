"""Smallest-prime-factor sieve and the multiplicative functions built on it.

Every other module in dirlab needs complete factorizations of integers up to
some bound (prime exponent vectors for the Bohr lift, divisor functions for
mean values, divisor sums for the Robin and Lagarias scans), so the sieve
stores the smallest prime factor of each n rather than a primality bit.

Pointwise queries (``factorize``, ``sigma_divisor_sum``...) take a sieve and
an integer; the ``*_table`` methods on :class:`FactorSieve` return numpy
arrays indexed by n for whole-range scans.
"""

from __future__ import annotations

import math
import os
import struct
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path

import numpy as np

from .exceptions import CapacityError

__all__ = [
    "FactorSieve",
    "FactoredInteger",
    "build_sieve",
    "factorize",
    "divisor_count_k",
    "restricted_divisor_count",
    "restricted_divisor_table",
    "sigma_divisor_sum",
    "omega_counts",
    "harmonic_number",
    "harmonic_numbers",
    "save_sieve",
    "load_sieve",
    "cached_sieve",
]

# spf entries are stored as 32-bit integers (also the on-disk layout)
MAX_LIMIT = 2**31 - 1
RESTRICTED_TABLE_GUARD = 10**7

_CACHE_MAGIC = b"DLSV1"
CACHE_ENV = "DIRLAB_SIEVE_CACHE"


class FactorSieve:
    """Smallest-prime-factor table for 0..limit.

    ``spf[n]`` is the least prime dividing n for n >= 2; by convention
    ``spf[1] == 1`` and ``spf[0] == 0``. The table is never modified after
    construction.
    """

    __slots__ = ("limit", "spf", "_primes")

    def __init__(self, limit: int, spf: np.ndarray):
        self.limit = int(limit)
        spf = np.asarray(spf, dtype=np.int64)
        if spf.shape != (self.limit + 1,):
            raise ValueError("spf table must have limit + 1 entries")
        spf.setflags(write=False)
        self.spf = spf
        self._primes = None

    def __repr__(self):
        return f"FactorSieve(limit={self.limit})"

    @property
    def primes(self) -> np.ndarray:
        """All primes <= limit, increasing."""
        if self._primes is None:
            n = np.arange(self.limit + 1)
            primes = n[(n >= 2) & (self.spf == n)]
            primes.setflags(write=False)
            self._primes = primes
        return self._primes

    def is_prime(self, n: int) -> bool:
        self._check(n, lo=0)
        return n >= 2 and int(self.spf[n]) == n

    def prime_count(self, x: float) -> int:
        """pi(x) for x <= limit."""
        if x > self.limit:
            raise ValueError(f"{x} exceeds sieve limit {self.limit}")
        return int(np.searchsorted(self.primes, x, side="right"))

    def nth_prime(self, j: int) -> int:
        """p_j with p_1 = 2."""
        if not 1 <= j <= len(self.primes):
            raise ValueError(f"p_{j} not available below limit {self.limit}")
        return int(self.primes[j - 1])

    def _check(self, n, lo=1):
        if not lo <= n <= self.limit:
            raise ValueError(f"n={n} outside sieve range [{lo}, {self.limit}]")

    # -- whole-range tables ---------------------------------------------

    def _prime_power_rounds(self, n_max):
        """Yield (index, prime, exponent) arrays, one distinct prime per round.

        Each n in 2..n_max appears in exactly omega(n) rounds.
        """
        if n_max > self.limit:
            raise ValueError(f"table bound {n_max} exceeds sieve limit {self.limit}")
        rest = np.arange(n_max + 1, dtype=np.int64)
        idx = np.arange(2, n_max + 1)
        while idx.size:
            r = rest[idx]
            p = self.spf[r]
            a = np.zeros_like(r)
            divisible = np.ones(r.shape, dtype=bool)
            while divisible.any():
                r = np.where(divisible, r // p, r)
                a += divisible
                divisible = r % p == 0
            yield idx, p, a
            rest[idx] = r
            idx = idx[r > 1]

    def multiplicative_table(self, prime_power_value, n_max=None, dtype=np.int64):
        """Array f[0..n_max] of the multiplicative f with f(p^a) given.

        ``prime_power_value(p, a)`` must accept numpy arrays. ``f[1] = 1``
        and ``f[0] = 0``.
        """
        n_max = self.limit if n_max is None else int(n_max)
        out = np.ones(n_max + 1, dtype=dtype)
        out[0] = 0
        for idx, p, a in self._prime_power_rounds(n_max):
            out[idx] *= prime_power_value(p, a).astype(dtype)
        return out

    def sigma_table(self, n_max=None) -> np.ndarray:
        """Sum of divisors sigma(n) for 0..n_max (int64, exact)."""
        return self.multiplicative_table(lambda p, a: (p ** (a + 1) - 1) // (p - 1), n_max)

    def divisor_count_table(self, k: int, n_max=None) -> np.ndarray:
        """d_k(n) for 0..n_max."""
        if k < 1:
            raise ValueError("k must be >= 1")
        binom = np.array([math.comb(a + k - 1, k - 1) for a in range(64)], dtype=np.int64)
        return self.multiplicative_table(lambda p, a: binom[a], n_max)

    def omega_tables(self, n_max=None):
        """(Omega, omega, P+) arrays for 0..n_max; P+(1) is reported as 1."""
        n_max = self.limit if n_max is None else int(n_max)
        big = np.zeros(n_max + 1, dtype=np.int64)
        small = np.zeros(n_max + 1, dtype=np.int64)
        largest = np.ones(n_max + 1, dtype=np.int64)
        largest[0] = 0
        for idx, p, a in self._prime_power_rounds(n_max):
            big[idx] += a
            small[idx] += 1
            largest[idx] = p  # primes come out in increasing order
        return big, small, largest


def build_sieve(limit: int) -> FactorSieve:
    """Build the smallest-prime-factor table up to ``limit`` (>= 2)."""
    limit = int(limit)
    if limit < 2:
        raise ValueError("sieve limit must be >= 2")
    if limit > MAX_LIMIT:
        raise CapacityError(f"sieve limit {limit} exceeds {MAX_LIMIT}")
    spf = np.zeros(limit + 1, dtype=np.int64)
    spf[1] = 1
    for p in range(2, math.isqrt(limit) + 1):
        if spf[p] == 0:
            block = spf[p * p :: p]
            block[block == 0] = p
    n = np.arange(limit + 1)
    unset = spf == 0
    unset[0] = False
    spf[unset] = n[unset]
    return FactorSieve(limit, spf)


@dataclass(frozen=True)
class FactoredInteger:
    """An integer held as its prime factorization.

    Used for numbers (colossally abundant numbers in particular) that leave
    the sieve range; ``log_value`` is the natural log of the integer.
    """

    factors: tuple
    log_value: float = field(default=None)

    def __post_init__(self):
        factors = tuple((int(p), int(a)) for p, a in self.factors)
        object.__setattr__(self, "factors", factors)
        primes = [p for p, _ in factors]
        if any(a < 1 for _, a in factors):
            raise ValueError("exponents must be positive")
        if any(q <= p for p, q in zip(primes, primes[1:])):
            raise ValueError("primes must be strictly increasing")
        exact = math.fsum(a * math.log(p) for p, a in factors)
        if self.log_value is None:
            object.__setattr__(self, "log_value", exact)
        elif abs(self.log_value - exact) > 1e-12 * max(1.0, abs(exact)):
            raise ValueError("log_value inconsistent with factors")

    @property
    def value(self) -> int:
        return math.prod(p**a for p, a in self.factors)

    def sigma(self) -> int:
        return math.prod((p ** (a + 1) - 1) // (p - 1) for p, a in self.factors)

    def sigma_ratio(self) -> float:
        """sigma(n)/n, computed as a product so huge n stay in float range."""
        return math.prod((1.0 - float(p) ** -(a + 1)) / (1.0 - 1.0 / p) for p, a in self.factors)

    def exponents(self):
        return [a for _, a in self.factors]

    def __str__(self):
        if not self.factors:
            return "1"
        return "*".join(f"{p}^{a}" if a > 1 else str(p) for p, a in self.factors)


def factorize(sieve: FactorSieve, n: int) -> FactoredInteger:
    """Prime factorization of n (1 <= n <= limit) by repeated spf lookups."""
    sieve._check(n)
    factors = []
    while n > 1:
        p = int(sieve.spf[n])
        a = 0
        while n % p == 0:
            n //= p
            a += 1
        factors.append((p, a))
    return FactoredInteger(tuple(factors))


def divisor_count_k(sieve: FactorSieve, n: int, k: int) -> int:
    """d_k(n): ordered factorizations of n into k factors."""
    if k < 1:
        raise ValueError("k must be >= 1")
    return math.prod(math.comb(a + k - 1, k - 1) for _, a in factorize(sieve, n).factors)


def restricted_divisor_count(sieve: FactorSieve, m: int, k: int, N: int) -> int:
    """d_{k,N}(m): ordered k-tuples of integers <= N whose product is m."""
    if m < 1 or k < 1 or N < 1:
        raise ValueError("m, k and N must be positive")
    if m > N**k:
        return 0
    return _restricted(m, k, N)


@lru_cache(maxsize=None)
def _restricted(m, k, N):
    if k == 1:
        return 1 if m <= N else 0
    total = 0
    for d in range(1, min(N, m) + 1):
        if m % d == 0 and m // d <= N ** (k - 1):
            total += _restricted(m // d, k - 1, N)
    return total


def restricted_divisor_table(k: int, N: int, guard: int = RESTRICTED_TABLE_GUARD) -> np.ndarray:
    """Array b with b[m] = d_{k,N}(m) for 0 <= m <= N^k.

    Built by k-fold Dirichlet convolution of the indicator of [1, N].
    """
    if k < 1 or N < 1:
        raise ValueError("k and N must be positive")
    size = N**k
    if size > guard:
        raise CapacityError(f"N^k = {size} exceeds enumeration guard {guard}")
    cur = np.zeros(N + 1, dtype=np.int64)
    cur[1:] = 1
    for _ in range(k - 1):
        nxt = np.zeros((len(cur) - 1) * N + 1, dtype=np.int64)
        support = np.nonzero(cur)[0]
        for n in range(1, N + 1):
            nxt[n * support] += cur[support]
        cur = nxt
    return cur


def sigma_divisor_sum(sieve: FactorSieve, n: int) -> int:
    """sigma(n), the sum of the divisors of n."""
    return factorize(sieve, n).sigma()


def omega_counts(sieve: FactorSieve, n: int):
    """(Omega(n), omega(n), P+(n)); n = 1 gives (0, 0, 1)."""
    factors = factorize(sieve, n).factors
    if not factors:
        return 0, 0, 1
    return sum(a for _, a in factors), len(factors), factors[-1][0]


def harmonic_number(n: int) -> float:
    """H_n = 1 + 1/2 + ... + 1/n."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return math.fsum(1.0 / j for j in range(n, 0, -1))


def harmonic_numbers(n_max: int) -> np.ndarray:
    """H[0..n_max] with H[0] = 0, by running sum (error below 1e-12 for n_max <= 10^7)."""
    h = np.zeros(n_max + 1)
    h[1:] = np.cumsum(1.0 / np.arange(1, n_max + 1))
    return h


# -- on-disk cache ---------------------------------------------------------


def save_sieve(sieve: FactorSieve, path) -> None:
    """Write ``magic | limit (u64 LE) | spf[0..limit] (u32 LE)``."""
    path = Path(path)
    with open(path, "wb") as fh:
        fh.write(_CACHE_MAGIC)
        fh.write(struct.pack("<Q", sieve.limit))
        fh.write(sieve.spf.astype("<u4").tobytes())


def load_sieve(path) -> FactorSieve:
    path = Path(path)
    data = path.read_bytes()
    if data[:5] != _CACHE_MAGIC:
        raise ValueError(f"{path}: not a dirlab sieve file")
    (limit,) = struct.unpack("<Q", data[5:13])
    spf = np.frombuffer(data, dtype="<u4", offset=13)
    if spf.size != limit + 1:
        raise ValueError(f"{path}: truncated sieve file")
    return FactorSieve(limit, spf.astype(np.int64))


def cached_sieve(limit: int) -> FactorSieve:
    """Build a sieve, memoized on disk when $DIRLAB_SIEVE_CACHE names a directory.

    Any cached sieve with a limit at least as large is reused.
    """
    cache_dir = os.environ.get(CACHE_ENV)
    if not cache_dir:
        return build_sieve(limit)
    cache_dir = Path(cache_dir)
    cache_dir.mkdir(parents=True, exist_ok=True)
    for candidate in sorted(cache_dir.glob("sieve-*.dlsv")):
        try:
            cached_limit = int(candidate.stem.split("-")[1])
        except (IndexError, ValueError):
            continue
        if cached_limit >= limit:
            return load_sieve(candidate)
    sieve = build_sieve(limit)
    save_sieve(sieve, cache_dir / f"sieve-{limit}.dlsv")
    return sieve
