"""Random Dirichlet polynomials sum eps_n d(n) n^{-s} with Rademacher signs.

Expected suprema are estimated by Monte Carlo over sign draws, each supremum
coming from the Bohr lift (a certified lower bound, so means are biased low).
The deterministic companions are the cell bound over the sets L_j and the
three-regime upper bound B, both returned without their unknown constants.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .bohr import lift, sup_estimate
from .dirichlet import DirichletPolynomial
from .sieve import FactorSieve

__all__ = [
    "RademacherSample",
    "CoefficientProfile",
    "SupremumStudy",
    "T2Bound",
    "sample_signs",
    "coefficient_profile",
    "smooth_support",
    "theorem_lb_bound",
    "lb_cells",
    "theorem_t2_bound",
    "expected_sup_mc",
    "halasz_ratio_study",
]

SQRT2 = math.sqrt(2.0)


@dataclass(frozen=True, eq=False)
class RademacherSample:
    signs: np.ndarray
    seed: int
    stream: int


def _generator(seed, stream) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed, spawn_key=(stream,))))


def sample_signs(N: int, seed: int, stream: int = 0) -> RademacherSample:
    """N i.i.d. uniform signs from the Philox stream (seed, stream)."""
    if N < 1:
        raise ValueError("N must be >= 1")
    bits = _generator(seed, stream).integers(0, 2, size=N, dtype=np.int8)
    return RademacherSample((1 - 2 * bits).astype(np.int8), seed, stream)


# -- coefficient profiles ----------------------------------------------------


@dataclass(frozen=True, eq=False)
class CoefficientProfile:
    """Coefficients d(1..N) and the summary quantities used by the bounds.

    ``d[n]`` holds d(n) (index 0 unused).  ``D1``/``D2`` are the partial sums
    of d and d^2 from m = 1; the tilde versions are running maxima of
    D1(m)/m and sqrt(D2(m)/m).
    """

    rule: str
    N: int
    d: np.ndarray
    D1: np.ndarray
    D2: np.ndarray
    D1_tilde: np.ndarray
    D2_tilde: np.ndarray
    H_d: tuple
    tau_d: int
    cell: np.ndarray  # j with P+(n) = p_j, 0 for n < 2

    def tau_at(self, N: int) -> int:
        """tau_d for the polynomial truncated at N."""
        j = self.cell[2 : N + 1][self.d[2 : N + 1] != 0]
        return int(j.max()) if j.size else 0

    @property
    def coefficients(self) -> np.ndarray:
        return self.d[1:]

    def summary(self, M=None):
        M = self.N if M is None else int(M)
        return {
            "D1": float(self.D1[M]),
            "D2": float(self.D2[M]),
            "D1tilde": float(self.D1_tilde[M]),
            "D2tilde": float(self.D2_tilde[M]),
            "tauD": self.tau_d,
        }


def _rule_values(rule, sieve: FactorSieve, N: int) -> np.ndarray:
    n = np.arange(N + 1)
    if callable(rule):
        d = np.zeros(N + 1)
        d[1:] = np.asarray(rule(n[1:]), dtype=float)
        return d
    if not isinstance(rule, str):
        table = np.asarray(rule, dtype=float)
        if table.size < N:
            raise ValueError(f"custom table has {table.size} entries, need {N}")
        d = np.zeros(N + 1)
        d[1:] = table[:N]
        return d
    name, _, arg = rule.partition(":")
    if name == "unit":
        d = np.ones(N + 1)
    elif name == "coprime":
        K = int(arg)
        if K < 1:
            raise ValueError("coprime:K needs K >= 1")
        d = (np.gcd(n, K) == 1).astype(float)
    elif name == "lambda":
        lam = float(arg)
        if not 0 < lam < SQRT2:
            raise ValueError(f"lambda:{arg} needs 0 < lambda < sqrt(2)")
        big_omega, _, _ = sieve.omega_tables(max(N, 2))
        d = lam ** big_omega[: N + 1].astype(float)
    elif name == "smooth":
        tau = int(arg)
        d = np.zeros(N + 1)
        d[1] = 1.0
        d[smooth_support(sieve, N, tau)] = 1.0
    else:
        raise ValueError(f"unknown coefficient rule {rule!r}")
    d[0] = 0.0
    return d


def coefficient_profile(rule, sieve: FactorSieve, N: int) -> CoefficientProfile:
    """Profile for ``'unit'``, ``'coprime:K'``, ``'lambda:L'`` (d = L^Omega),
    ``'smooth:tau'``, a callable of n, or a custom table of d(1..N)."""
    if N < 1:
        raise ValueError("N must be >= 1")
    if N > sieve.limit:
        raise ValueError(f"N={N} exceeds sieve limit {sieve.limit}")
    d = _rule_values(rule, sieve, N)
    D1 = np.cumsum(d)
    D2 = np.cumsum(d * d)
    m = np.arange(N + 1, dtype=float)
    m[0] = 1.0
    D1_tilde = np.maximum.accumulate(D1 / m)
    D2_tilde = np.sqrt(np.maximum.accumulate(D2 / m))
    cell = np.zeros(N + 1, dtype=np.int64)
    if N >= 2:
        _, _, big_p = sieve.omega_tables(N)
        cell[2:] = np.searchsorted(sieve.primes, big_p[2 : N + 1]) + 1
    H = tuple(np.unique(cell[2:][d[2:] != 0]).tolist())
    label = rule if isinstance(rule, str) else "custom"
    return CoefficientProfile(label, N, d, D1, D2, D1_tilde, D2_tilde, H, max(H) if H else 0, cell)


def smooth_support(sieve: FactorSieve, N: int, tau: int) -> np.ndarray:
    """{2 <= n <= N : P+(n) <= p_tau}."""
    if tau < 1:
        raise ValueError("tau must be >= 1")
    if N < 2:
        return np.empty(0, dtype=np.int64)
    _, _, big_p = sieve.omega_tables(N)
    bound = sieve.nth_prime(tau) if tau <= sieve.primes.size else sieve.limit
    n = np.arange(2, N + 1)
    return n[big_p[2 : N + 1] <= bound]


# -- deterministic bounds ----------------------------------------------------


def lb_cells(sieve: FactorSieve, N: int):
    """{j: L_j} for mu/2 < j <= mu, L_j = {p_j m : m <= N/p_j, P+(m) <= p_{floor(mu/2)}}."""
    mu = sieve.prime_count(N)
    if mu < 2:
        raise ValueError("need pi(N) >= 2")
    half = mu // 2
    _, _, big_p = sieve.omega_tables(N)
    p_half = sieve.nth_prime(half)
    cells = {}
    for j in range(half + 1, mu + 1):
        p = sieve.nth_prime(j)
        m = np.arange(1, N // p + 1)
        cells[j] = p * m[big_p[m] <= p_half]  # P+(1) = 1
    return cells


def theorem_lb_bound(profile: CoefficientProfile, sieve: FactorSieve, N: int, sigma: float) -> float:
    """sum_{mu/2 < j <= mu} (sum_{n in L_j} d(n)^2 n^{-2 sigma})^{1/2}."""
    if N > profile.N:
        raise ValueError("profile shorter than N")
    total = 0.0
    for cell in lb_cells(sieve, N).values():
        w = profile.d[cell] ** 2 * cell.astype(float) ** (-2 * sigma)
        total += math.sqrt(math.fsum(w))
    return total


@dataclass(frozen=True)
class T2Bound:
    value: float  # D2_tilde(N) * B
    B: float
    regime: int
    degenerate: bool
    thresholds: tuple  # (lower, upper) tau_d cut points


def theorem_t2_bound(profile: CoefficientProfile, N: int, sigma: float) -> T2Bound:
    """D2_tilde(N) * B with the three-regime B selected by tau_d.

    Regime 1 for tau_d >= u, regime 2 for l <= tau_d < u, regime 3 below l,
    where u = (N loglog N / log N)^{1/2} and l = (N / (log N loglog N))^{1/2}.
    In regime 3 a tau_d below 3 is evaluated at 3 and flagged degenerate.
    """
    if N < 3:
        raise ValueError("need N >= 3")
    if N > profile.N:
        raise ValueError("profile shorter than N")
    tau = max(profile.tau_at(N), 1)
    L, LL = math.log(N), math.log(math.log(N))
    upper = math.sqrt(N * LL / L)
    lower = math.sqrt(N / (L * LL))
    degenerate = False
    if tau >= upper:
        regime = 1
        B = N ** (0.5 - sigma) * math.sqrt(tau / L)
    elif tau >= lower:
        regime = 2
        B = N ** (0.75 - sigma) * LL**0.25 / L**0.75
    else:
        regime = 3
        if tau < 3:
            degenerate, tau = True, 3
        B = N ** (0.5 - sigma) * math.sqrt(tau * math.log(math.log(tau)) / math.log(tau))
    return T2Bound(float(profile.D2_tilde[N] * B), B, regime, degenerate, (lower, upper))


# -- Monte Carlo -------------------------------------------------------------


@dataclass(frozen=True)
class SupremumStudy:
    config: dict
    rows: list = field(default_factory=list)

    @property
    def ratio_spread(self) -> float:
        r = [row["ratio"] for row in self.rows]
        return max(r) / min(r)

    def to_dict(self):
        return {"config": dict(self.config), "rows": [dict(r) for r in self.rows]}


_worker_sieve = None


def _init_worker(sieve):
    global _worker_sieve
    _worker_sieve = sieve


def _trial(args):
    weights, sigma, N, seed, trial, restarts, iterations, sieve = args
    sieve = sieve if sieve is not None else _worker_sieve
    signs = sample_signs(N, seed, trial).signs
    P = DirichletPolynomial(signs * weights, sigma)
    est = sup_estimate(lift(P, sieve), restarts=restarts, iterations=iterations, seed=[seed, trial])
    return est.lower_bound


def expected_sup_mc(
    profile: CoefficientProfile,
    N: int,
    sigma: float,
    trials: int,
    sieve: FactorSieve,
    restarts: int = 8,
    iterations: int = 4,
    seed: int = 0,
    jobs: int = 1,
):
    """(mean, standard error, per-trial sups) of sup_t |sum_{n<=N} eps_n d(n) n^{-sigma-it}|.

    Trial i uses sign stream i; the result does not depend on ``jobs``.
    """
    if trials < 2:
        raise ValueError("trials must be >= 2")
    if N > profile.N:
        raise ValueError("profile shorter than N")
    weights = profile.d[1 : N + 1]
    if jobs > 1:
        tasks = [(weights, sigma, N, seed, i, restarts, iterations, None) for i in range(trials)]
        with ProcessPoolExecutor(max_workers=jobs, initializer=_init_worker, initargs=(sieve,)) as pool:
            sups = np.array(list(pool.map(_trial, tasks)))
    else:
        sups = np.array([_trial((weights, sigma, N, seed, i, restarts, iterations, sieve)) for i in range(trials)])
    return float(sups.mean()), float(sups.std(ddof=1) / math.sqrt(trials)), sups


def halasz_ratio_study(
    rule,
    N_values,
    sigma: float,
    trials: int,
    sieve: FactorSieve,
    restarts: int = 8,
    iterations: int = 4,
    seed: int = 0,
    jobs: int = 1,
) -> SupremumStudy:
    """Rows of meanSup, its standard error, meanSup log N / N^{1-sigma} and the two bounds."""
    if not 0 <= sigma < 0.5:
        raise ValueError("sigma must lie in [0, 1/2)")
    N_values = sorted(int(N) for N in N_values)
    profile = coefficient_profile(rule, sieve, max(N_values))
    rows = []
    for N in N_values:
        mean, se, _ = expected_sup_mc(profile, N, sigma, trials, sieve, restarts, iterations, seed, jobs)
        rows.append(
            {
                "N": N,
                "meanSup": mean,
                "stdErr": se,
                "ratio": mean * math.log(N) / N ** (1 - sigma),
                "lbBound": theorem_lb_bound(profile, sieve, N, sigma),
                "t2Bound": theorem_t2_bound(profile, N, sigma).value,
            }
        )
    config = {
        "rule": profile.rule,
        "Nvalues": N_values,
        "sigma": float(sigma),
        "trials": int(trials),
        "restarts": int(restarts),
        "iterations": int(iterations),
        "seed": int(seed),
    }
    return SupremumStudy(config, rows)
