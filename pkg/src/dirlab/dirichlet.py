"""Dirichlet polynomials, zeta approximations and the square identities.

A :class:`DirichletPolynomial` is ``sum_n d(n) exp(-(sigma + i t) lambda_n)``
with ``lambda_n = log n`` unless explicit frequencies are given, so the
default case is the classical ``sum_n d(n) n^{-s}``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import bernoulli

__all__ = [
    "DirichletPolynomial",
    "evaluate",
    "zeta_approx",
    "zeta_reference",
    "square_identity_f1",
    "square_identity_f3",
    "identity_tables",
    "rudin_shapiro_coefficients",
    "trig_sup",
    "sigma_u_estimate",
    "DEFAULT_VALIDITY_C",
    "ZETA_ERROR_K",
]

DEFAULT_VALIDITY_C = 4.0
ZETA_ERROR_K = 10.0  # |zeta_approx - zeta| <= K x^{-sigma}, calibrated in the tests
_EVAL_BLOCK = 2**22


@dataclass(frozen=True, eq=False)
class DirichletPolynomial:
    """Coefficients d(1..N), abscissa sigma and optional frequencies.

    With explicit frequencies the damping factor is ``exp(-sigma*lambda_n)``,
    which reduces to ``n^{-sigma}`` for the logarithmic convention.
    """

    coefficients: np.ndarray
    sigma: float = 0.0
    frequencies: np.ndarray | None = None

    def __post_init__(self):
        d = np.atleast_1d(np.asarray(self.coefficients))
        if d.ndim != 1 or d.size < 1:
            raise ValueError("need a 1-d coefficient array with N >= 1")
        if not np.iscomplexobj(d):
            d = d.astype(float)
        object.__setattr__(self, "coefficients", d)
        if self.frequencies is not None:
            lam = np.asarray(self.frequencies, dtype=float)
            if lam.shape != d.shape:
                raise ValueError("frequencies and coefficients differ in length")
            if np.any(np.diff(lam) <= 0):
                raise ValueError("explicit frequencies must be strictly increasing")
            object.__setattr__(self, "frequencies", lam)
        object.__setattr__(self, "sigma", float(self.sigma))
        lam = self.lambdas
        object.__setattr__(self, "_weights", d * np.exp(-self.sigma * lam))

    @classmethod
    def unit(cls, N, sigma=0.0):
        return cls(np.ones(N), sigma)

    @property
    def N(self) -> int:
        return self.coefficients.size

    @property
    def uses_log_frequencies(self) -> bool:
        return self.frequencies is None

    @property
    def lambdas(self) -> np.ndarray:
        if self.frequencies is None:
            return np.log(np.arange(1, self.N + 1, dtype=float))
        return self.frequencies

    @property
    def weights(self) -> np.ndarray:
        """The damped coefficients d(n) n^{-sigma}."""
        return self._weights

    @property
    def bandwidth(self) -> float:
        return float(np.max(np.abs(self.lambdas)))

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        flat = t.ravel()
        lam = self.lambdas
        w = self._weights.astype(complex)
        out = np.empty(flat.size, dtype=complex)
        step = max(1, _EVAL_BLOCK // self.N)
        for start in range(0, flat.size, step):
            tt = flat[start : start + step]
            out[start : start + step] = np.exp(-1j * np.outer(tt, lam)) @ w
        return out.reshape(t.shape)[()]


def evaluate(P: DirichletPolynomial, t):
    """P(sigma + i t); t may be a scalar or an array."""
    return P(t)


def zeta_approx(s, x: int, C: float = DEFAULT_VALIDITY_C):
    """Truncated sum with the x^{1-s}/(1-s) correction.

    Valid (error O(x^{-sigma})) for sigma > 0 and |t| <= 2 pi x / C.
    """
    s = complex(s)
    if s == 1:
        raise ZeroDivisionError("zeta has a pole at s = 1")
    if s.real <= 0:
        raise ValueError("need Re(s) > 0")
    if C <= 1:
        raise ValueError("C must exceed 1")
    if abs(s.imag) > 2 * math.pi * x / C:
        raise ValueError(f"|t| = {abs(s.imag)} outside validity window 2*pi*x/C = {2 * math.pi * x / C}")
    n = np.arange(1, int(x) + 1, dtype=float)
    head = complex(np.sum(n ** (-s)))
    return head - x ** (1 - s) / (1 - s)


def zeta_reference(s, terms: int | None = None, bernoulli_order: int = 8):
    """zeta(s) by Euler-Maclaurin summation with ``bernoulli_order`` tail terms.

    ``terms`` defaults to a value growing with |s| so the remainder stays
    around (2 pi)^{-2 * bernoulli_order}.
    """
    s = complex(s)
    if s == 1:
        raise ZeroDivisionError("zeta has a pole at s = 1")
    if s.real <= 0:
        raise ValueError("need Re(s) > 0")
    if terms is None:
        terms = max(32, math.ceil(abs(s)) + 16)
    N = int(terms)
    n = np.arange(1, N, dtype=float)
    total = complex(np.sum(n[::-1] ** (-s)))
    total += N ** (1 - s) / (s - 1) + 0.5 * N ** (-s)
    B = bernoulli(2 * bernoulli_order)
    rising = s  # s (s+1) ... (s+2j-2)
    for j in range(1, bernoulli_order + 1):
        total += B[2 * j] / math.factorial(2 * j) * rising * N ** (-s - 2 * j + 1)
        rising *= (s + 2 * j - 1) * (s + 2 * j)
    return total


# -- square identities -------------------------------------------------------


def _lhs_table(n_max, t):
    """|sum_{k<=n} k^{-1/2-it} - n^{1/2-it}/(1/2-it)|^2 for n = 0..n_max."""
    t = np.atleast_1d(np.asarray(t, dtype=float))
    k = np.arange(1, n_max + 1, dtype=float)
    terms = k[:, None] ** -0.5 * np.exp(-1j * np.outer(np.log(k), t))
    partial = np.vstack([np.zeros((1, t.size)), np.cumsum(terms, axis=0)])
    n = np.arange(0, n_max + 1, dtype=float)[:, None]
    with np.errstate(divide="ignore"):
        correction = np.sqrt(n) * np.exp(-1j * np.log(np.where(n > 0, n, 1.0)) * t) / (0.5 - 1j * t)
    return np.abs(partial - correction) ** 2


def _row(k, t):
    """The k-th row of the double sum: 1/k + 2 sum_{l<k} Re{...}."""
    if k == 1:
        return np.full(t.shape, 1.0)
    l = np.arange(1, k, dtype=float)[:, None]
    s = 0.5 + 1j * t[None, :]
    ratio = k / l
    upper = np.log(ratio)
    lower = np.log((k - 1) / l)
    term = np.exp(1j * t[None, :] * upper) / np.sqrt(k * l)
    integral = (np.exp(s * upper) - np.exp(s * lower)) / s
    return 1.0 / k + 2.0 * np.sum((term - integral).real, axis=0)


def identity_tables(n_max: int, t):
    """Both sides of the first square identity for every n <= n_max.

    Returns arrays ``lhs, rhs`` of shape (n_max + 1, len(t)); row 0 is zero.
    The second identity for (m, n) is the difference of rows n and m.
    """
    t = np.atleast_1d(np.asarray(t, dtype=float))
    lhs = _lhs_table(n_max, t)
    rows = np.vstack([np.zeros((1, t.size))] + [_row(k, t)[None, :] for k in range(1, n_max + 1)])
    return lhs, np.cumsum(rows, axis=0)


def square_identity_f1(n: int, t):
    """(lhs, rhs) of the homogeneous square identity at (n, t)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    t_arr = np.atleast_1d(np.asarray(t, dtype=float))
    lhs = _lhs_table(n, t_arr)[n]
    rhs = sum(_row(k, t_arr) for k in range(1, n + 1))
    if np.ndim(t) == 0:
        return float(lhs[0]), float(rhs[0])
    return lhs, rhs


def square_identity_f3(m: int, n: int, t):
    """(lhs, rhs) of the difference identity for n >= m >= 1."""
    if not 1 <= m <= n:
        raise ValueError("need 1 <= m <= n")
    t_arr = np.atleast_1d(np.asarray(t, dtype=float))
    table = _lhs_table(n, t_arr)
    lhs = table[n] - table[m]
    rhs = np.zeros(t_arr.shape)
    for k in range(m + 1, n + 1):
        rhs = rhs + _row(k, t_arr)
    if np.ndim(t) == 0:
        return float(lhs[0]), float(rhs[0])
    return lhs, rhs


# -- Rudin-Shapiro and trigonometric suprema ---------------------------------


def rudin_shapiro_coefficients(length: int) -> np.ndarray:
    """d(n) = (-1)^{# of '11' blocks in binary(n-1)}, n = 1..length."""
    if length < 1:
        raise ValueError("length must be >= 1")
    m = np.arange(length, dtype=np.int64)
    pairs = m & (m >> 1)
    parity = np.zeros(length, dtype=np.int64)
    while np.any(pairs):
        parity ^= pairs & 1
        pairs >>= 1
    return 1 - 2 * parity


def trig_sup(coeffs, grid: int = 2**18):
    """Estimate sup_t |sum_n c_n e^{i (n-1) t}| on an FFT grid of ``grid`` points.

    The grid maximum is refined by one parabolic step; returns (sup, t).
    """
    c = np.asarray(coeffs, dtype=complex)
    if grid < c.size:
        raise ValueError("grid must have at least as many points as coefficients")
    values = np.abs(np.fft.ifft(c, n=grid) * grid)
    j = int(np.argmax(values))
    step = 2 * math.pi / grid
    best_t, best = j * step, float(values[j])
    y0, y1, y2 = values[j - 1], values[j], values[(j + 1) % grid]
    denom = y0 - 2 * y1 + y2
    if denom < 0:
        t_star = (j + 0.5 * (y0 - y2) / denom) * step
        v = abs(np.sum(c * np.exp(1j * np.arange(c.size) * t_star)))
        if v > best:
            best_t, best = t_star % (2 * math.pi), float(v)
    return best, best_t


def _rule_coefficients(rule, N):
    if callable(rule):
        return np.asarray(rule(np.arange(1, N + 1)), dtype=float)
    if rule == "unit":
        return np.ones(N)
    if rule == "rs":
        return rudin_shapiro_coefficients(N).astype(float)
    if rule == "delta":
        d = np.zeros(N)
        d[0] = 1.0
        return d
    raise ValueError(f"unknown coefficient rule {rule!r}")


def sigma_u_estimate(coefficient_rule, N_values, sigma=0.0, restarts=16, iterations=8, seed=0, sieve=None):
    """log(sup_t |P_N|) / log N for each N, the sup coming from the Bohr lift.

    ``coefficient_rule`` is ``'unit'``, ``'rs'``, ``'delta'`` or a callable
    mapping an array of n to d(n).
    """
    from .bohr import lift, sup_estimate
    from .sieve import build_sieve

    N_values = [int(N) for N in N_values]
    if any(N < 2 for N in N_values):
        raise ValueError("each N must be >= 2")
    if sieve is None or sieve.limit < max(N_values):
        sieve = build_sieve(max(N_values))
    out = []
    for N in N_values:
        P = DirichletPolynomial(_rule_coefficients(coefficient_rule, N), sigma)
        est = sup_estimate(lift(P, sieve), restarts=restarts, iterations=iterations, seed=seed)
        out.append((N, math.log(est.lower_bound) / math.log(N)))
    return out
