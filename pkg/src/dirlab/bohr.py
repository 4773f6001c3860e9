"""Bohr lift of Dirichlet polynomials to the torus, and supremum estimation.

Writing n = prod p_j^{a_j(n)} turns ``sum d(n) n^{-sigma-it}`` into the
trigonometric polynomial ``Q(z) = sum d(n) n^{-sigma} exp(2 pi i <a(n), z>)``
on T^mu, mu = pi(N). The sup over the line equals the sup over the torus, so
suprema are searched on the torus, where the problem has bounded dimension.

:func:`sup_estimate` returns a certified lower bound (a point actually
attaining it) and the trivial upper envelope ``sum |coefficients|``; it does
not claim the true supremum.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .dirichlet import DirichletPolynomial
from .sieve import FactorSieve

__all__ = [
    "TorusPolynomial",
    "SupEstimate",
    "lift",
    "torus_eval",
    "torus_point",
    "sup_estimate",
    "kronecker_sup",
    "bohr_lower_bound",
    "queffelec_constant",
    "queffelec_lower_bound",
]

SIGN_PATTERN_DIMS = 12
ELITE_STARTS = 4
_GOLDEN = (math.sqrt(5) - 1) / 2
_GOLDEN_STEPS = 40
_TWO_PI_I = 2j * math.pi


@dataclass(frozen=True, eq=False)
class TorusPolynomial:
    """Terms coefficient * exp(2 pi i <exponents, z>) over T^dimension."""

    primes: np.ndarray  # p_1..p_mu
    exponents: np.ndarray  # (terms, mu) nonnegative ints
    coefficients: np.ndarray  # (terms,)
    indices: np.ndarray  # the n each term came from

    @property
    def dimension(self) -> int:
        return self.primes.size

    @property
    def upper_envelope(self) -> float:
        return float(np.sum(np.abs(self.coefficients)))

    def omega(self) -> np.ndarray:
        """Omega(n) for each term."""
        return self.exponents.sum(axis=1)


@dataclass(frozen=True, eq=False)
class SupEstimate:
    lower_bound: float
    upper_envelope: float
    witness: np.ndarray
    evaluations: int

    def to_dict(self):
        return {
            "lowerBound": self.lower_bound,
            "upperEnvelope": self.upper_envelope,
            "witness": [float(x) for x in self.witness],
            "evaluations": int(self.evaluations),
        }


@lru_cache(maxsize=32)
def _exponent_matrix(sieve: FactorSieve, N: int):
    mu = sieve.prime_count(N)
    E = np.zeros((N + 1, mu), dtype=np.int64)
    for idx, p, a in sieve._prime_power_rounds(N):
        E[idx, np.searchsorted(sieve.primes, p)] = a
    E.setflags(write=False)
    return E


def lift(P: DirichletPolynomial, sieve: FactorSieve) -> TorusPolynomial:
    """Torus polynomial with one term per n such that d(n) != 0."""
    if not P.uses_log_frequencies:
        raise ValueError("the Bohr lift needs the lambda_n = log n convention")
    N = P.N
    if N > sieve.limit:
        raise ValueError(f"N={N} exceeds sieve limit {sieve.limit}")
    E = _exponent_matrix(sieve, max(N, 2))
    w = P.weights
    keep = np.nonzero(P.coefficients != 0)[0]
    n = keep + 1
    mu = E.shape[1] if N >= 2 else 0
    return TorusPolynomial(
        primes=np.asarray(sieve.primes[:mu]),
        exponents=np.ascontiguousarray(E[n, :mu]),
        coefficients=w[keep],
        indices=n,
    )


def torus_eval(Q: TorusPolynomial, z):
    """Q(z) for z of shape (mu',) or (batch, mu'), mu' >= Q.dimension."""
    z = np.asarray(z, dtype=float)
    if z.shape[-1] < Q.dimension:
        raise ValueError(f"z has {z.shape[-1]} coordinates, need {Q.dimension}")
    phase = z[..., : Q.dimension] @ Q.exponents.T
    return np.exp(_TWO_PI_I * phase) @ Q.coefficients.astype(complex)


def torus_point(Q: TorusPolynomial, t: float) -> np.ndarray:
    """The point z(t) with z_j = -t log(p_j) / (2 pi) mod 1, so Q(z(t)) = P(t)."""
    return np.mod(-t * np.log(Q.primes.astype(float)) / (2 * math.pi), 1.0)


def _deterministic_starts(Q: TorusPolynomial):
    mu = Q.dimension
    starts = [np.zeros((1, mu))]
    m0 = min(mu, SIGN_PATTERN_DIMS)
    if m0:
        bits = (np.arange(2**m0)[:, None] >> np.arange(m0)[None, :]) & 1
        signs = np.zeros((2**m0, mu))
        signs[:, :m0] = 0.5 * bits
        starts.append(signs[1:])
    # rotations of the phase-aligning point on the prime coordinates: averaging
    # Q against e^{-2 pi i theta} over these recovers sum_p |c_p| exactly
    aligned = np.zeros(mu)
    omega = Q.omega()
    prime_terms = np.nonzero(omega == 1)[0]
    for i in prime_terms:
        j = int(np.argmax(Q.exponents[i]))
        aligned[j] = -np.angle(Q.coefficients[i]) / (2 * math.pi)
    K = max(2, int(omega.max(initial=0)) + 1)
    theta = np.arange(K)[:, None] / K
    starts.append(np.mod(aligned[None, :] + theta, 1.0))
    return np.vstack(starts)


def _random_starts(mu, restarts, seed):
    rows = []
    for r in range(restarts):
        rng = np.random.Generator(np.random.Philox(np.random.SeedSequence(seed, spawn_key=(r,))))
        rows.append(rng.random(mu))
    return np.array(rows).reshape(restarts, mu)


def _coordinate_ascent(Q: TorusPolynomial, z, iterations):
    """Batched coordinate-wise maximization of |Q|^2; never decreases |Q|.

    Restricted to coordinate j, Q is sum_a g_a e^{2 pi i a z_j} where g_a
    collects the terms with a_j(n) = a; each step maximizes that 1-D
    trigonometric polynomial by grid search plus golden-section refinement.
    """
    E = Q.exponents
    c = Q.coefficients.astype(complex)
    B = z.shape[0]
    z = z.copy()
    evals = 0
    active = [j for j in range(Q.dimension) if E[:, j].any()]
    groups = {j: [np.nonzero(E[:, j] == a)[0] for a in range(1, int(E[:, j].max()) + 1)] for j in active}
    rows = np.arange(B)
    for _ in range(iterations):
        v = c[None, :] * np.exp(_TWO_PI_I * (z @ E.T))
        before = np.abs(v.sum(axis=1))
        for j in active:
            deg = len(groups[j])
            powers = np.arange(deg + 1)
            S = np.empty((B, deg + 1), dtype=complex)
            for a, idx in enumerate(groups[j], start=1):
                S[:, a] = v[:, idx].sum(axis=1)
            S[:, 0] = v.sum(axis=1) - S[:, 1:].sum(axis=1)
            g = S * np.exp(-_TWO_PI_I * np.outer(z[:, j], powers))

            def h(theta):
                return np.abs(np.sum(g * np.exp(_TWO_PI_I * theta[:, None] * powers[None, :]), axis=1)) ** 2

            current = h(z[:, j])
            G = max(16, 8 * deg)
            grid = np.arange(G) / G
            vals = np.abs(g @ np.exp(_TWO_PI_I * np.outer(powers, grid))) ** 2
            k = np.argmax(vals, axis=1)
            lo, hi = (k - 1) / G, (k + 1) / G
            x1 = hi - _GOLDEN * (hi - lo)
            x2 = lo + _GOLDEN * (hi - lo)
            f1, f2 = h(x1), h(x2)
            for _ in range(_GOLDEN_STEPS):
                left = f1 > f2
                hi = np.where(left, x2, hi)
                lo = np.where(left, lo, x1)
                x1 = hi - _GOLDEN * (hi - lo)
                x2 = lo + _GOLDEN * (hi - lo)
                f1, f2 = h(x1), h(x2)
            cand = np.stack([grid[k], x1, x2], axis=1)
            cvals = np.stack([vals[rows, k], f1, f2], axis=1)
            best = np.argmax(cvals, axis=1)
            new_theta = np.mod(cand[rows, best], 1.0)
            accept = cvals[rows, best] > current
            delta = np.where(accept, new_theta - z[:, j], 0.0)
            z[:, j] = np.where(accept, new_theta, z[:, j])
            rot = np.exp(_TWO_PI_I * delta)
            for a, idx in enumerate(groups[j], start=1):
                v[:, idx] *= (rot**a)[:, None]
            evals += B * (1 + G + 2 + 2 * _GOLDEN_STEPS)
        after = np.abs(np.exp(_TWO_PI_I * (z @ E.T)) @ c)
        if np.all(after - before <= 1e-15 * np.maximum(1.0, after)):
            break
    return z, evals


def sup_estimate(Q: TorusPolynomial, restarts: int = 16, iterations: int = 8, seed: int = 0) -> SupEstimate:
    """Multistart coordinate ascent for sup_z |Q(z)|.

    Deterministic starts (the origin, the sign patterns z_j in {0, 1/2} on the
    first 12 prime coordinates, and rotations of the phase-aligning point) are
    always evaluated; the best few of them plus ``restarts`` seeded uniform
    points are then improved by coordinate-wise golden-section ascent. The
    result never falls below the Bohr bound sum_p |c_p|.
    """
    if restarts < 1 or iterations < 1:
        raise ValueError("restarts and iterations must be >= 1")
    upper = Q.upper_envelope
    mu = Q.dimension
    if Q.coefficients.size == 0:
        return SupEstimate(0.0, 0.0, np.zeros(mu), 0)
    if mu == 0:
        value = float(abs(np.sum(Q.coefficients)))
        return SupEstimate(value, upper, np.zeros(0), 1)

    det = _deterministic_starts(Q)
    det_vals = np.abs(torus_eval(Q, det))
    order = np.argsort(-det_vals, kind="stable")[:ELITE_STARTS]
    starts = np.vstack([det[order], _random_starts(mu, restarts, seed)])
    final, evals = _coordinate_ascent(Q, starts, iterations)
    final = np.vstack([det[order[:1]], final])
    values = np.abs(torus_eval(Q, final))
    best = int(np.argmax(values))
    witness = np.mod(final[best], 1.0)
    lower = float(abs(torus_eval(Q, witness)))
    return SupEstimate(min(lower, upper), upper, witness, int(evals + det.shape[0] + values.size))


def kronecker_sup(d) -> float:
    """sup_t |sum d(n) e^{-i t phi_n}| = sum |d(n)| for linearly independent phi."""
    return float(np.sum(np.abs(np.asarray(d))))


def bohr_lower_bound(P: DirichletPolynomial, sieve: FactorSieve) -> float:
    """sum_{p <= N} |d(p)| p^{-sigma}."""
    if not P.uses_log_frequencies:
        raise ValueError("needs the lambda_n = log n convention")
    primes = sieve.primes[sieve.primes <= P.N]
    return float(np.sum(np.abs(P.weights[primes - 1])))


def queffelec_constant(m: int) -> float:
    """C_m = (2/sqrt(pi))^{m-1} m^{m/2} (m+1)^{(m+1)/2} / (2^m (m!)^{2/(m+1)})."""
    if m < 1:
        raise ValueError("m must be >= 1")
    log_c = (
        (m - 1) * math.log(2 / math.sqrt(math.pi))
        + 0.5 * m * math.log(m)
        + 0.5 * (m + 1) * math.log(m + 1)
        - m * math.log(2)
        - 2.0 / (m + 1) * math.lgamma(m + 1)
    )
    return math.exp(log_c)


def queffelec_lower_bound(P: DirichletPolynomial, sieve: FactorSieve, m: int):
    """(C_m, norm) where norm = (sum_{Omega(n)=m} |c_n|^{2m/(m+1)})^{(m+1)/(2m)}.

    c_n = d(n) n^{-sigma}; the lower bound on the supremum is norm / C_m.
    """
    if not P.uses_log_frequencies:
        raise ValueError("needs the lambda_n = log n convention")
    big_omega, _, _ = sieve.omega_tables(max(P.N, 2))
    mask = big_omega[1 : P.N + 1] == m
    w = np.abs(P.weights[mask])
    p = 2.0 * m / (m + 1)
    norm = float(np.sum(w**p) ** (1.0 / p))
    return queffelec_constant(m), norm
