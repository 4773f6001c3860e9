"""Mean values of Dirichlet polynomials and the explicit-constant inequalities.

Integrals of |P|^{2k} are computed either in closed form (bilinear expansion,
k = 1) or by the band-limited quadrature in :mod:`dirlab.quadrature`.  The
check functions return small report objects carrying both sides, the bound
and the quadrature error so that a pass/fail verdict can be audited.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations_with_replacement

import numpy as np

from . import quadrature
from .dirichlet import DirichletPolynomial
from .exceptions import CapacityError, DegenerateSpacingError
from .sieve import FactorSieve, RESTRICTED_TABLE_GUARD, restricted_divisor_table

__all__ = [
    "AtomicMeasure",
    "MeanValueReport",
    "SpacingReport",
    "SquareFunctionResult",
    "MajorizationResult",
    "InghamResult",
    "mean_value_integral",
    "mv_limit_formula",
    "power_coefficients",
    "mean_value_report",
    "check_suite",
    "CHECK_SUITES",
    "delta_min",
    "bilinear_integral",
    "montgomery_vaughan_check",
    "linear_spacing_coefficient",
    "higher_moment_check",
    "fourier_mean",
    "square_function_check",
    "moment_square_function_check",
    "majorization_check",
    "ingham_mordell_check",
    "divisor_moment_ratio",
    "divisor_moment_slope",
]

SPACING_GUARD = 10**6
SQUARE_FUNCTION_CONSTANT = 24.0
MAJORANT_CONSTANT = 3.0
_DEGENERATE_RTOL = 1e-12


# -- measures and Fourier means ----------------------------------------------


@dataclass(frozen=True, eq=False)
class AtomicMeasure:
    """Finite atomic measure; coincident atoms are merged on construction."""

    locations: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        x = np.atleast_1d(np.asarray(self.locations, dtype=float))
        w = np.atleast_1d(np.asarray(self.weights, dtype=float))
        if x.shape != w.shape or x.ndim != 1:
            raise ValueError("locations and weights must be 1-d and equally long")
        if np.any(w < 0) or not np.all(np.isfinite(w)) or not np.all(np.isfinite(x)):
            raise ValueError("weights must be finite and nonnegative")
        ux, inv = np.unique(x, return_inverse=True)
        uw = np.zeros(ux.size)
        np.add.at(uw, inv, w)
        object.__setattr__(self, "locations", ux)
        object.__setattr__(self, "weights", uw)

    @classmethod
    def from_atoms(cls, atoms):
        atoms = list(atoms)
        if not atoms:
            return cls(np.empty(0), np.empty(0))
        x, w = zip(*atoms)
        return cls(np.array(x), np.array(w))

    @property
    def total_mass(self) -> float:
        return math.fsum(self.weights)

    def mass_at(self, x0: float) -> float:
        hit = self.locations == x0
        return float(self.weights[hit].sum())


def fourier_mean(measure: AtomicMeasure, x0: float, T: float) -> float:
    """M_T = (1/2T) int_{-T}^{T} e^{-i t x0} nu^(t) dt = sum w_i sin(T y_i)/(T y_i)."""
    if T <= 0:
        raise ValueError("T must be positive")
    y = measure.locations - x0
    return float(np.dot(measure.weights, np.sinc(T * y / math.pi)))


@dataclass(frozen=True)
class SquareFunctionResult:
    total: float
    bound: float
    means: tuple = ()

    @property
    def passed(self) -> bool:
        return self.total <= self.bound


def _check_sequence(Ts):
    Ts = np.asarray(Ts, dtype=float)
    if Ts.ndim != 1 or Ts.size < 1:
        raise ValueError("need a nonempty T sequence")
    if np.any(Ts <= 0) or np.any(np.diff(Ts) < 0):
        raise ValueError("T sequence must be positive and nondecreasing")
    return Ts


def square_function_check(measure: AtomicMeasure, x0: float, Ts) -> SquareFunctionResult:
    """sum_j |M_{T_{j+1}} - M_{T_j}|^2 against 24 nu(R)^2."""
    Ts = _check_sequence(Ts)
    y = measure.locations - x0
    M = np.sinc(np.outer(Ts, y) / math.pi) @ measure.weights
    total = float(np.sum(np.diff(M) ** 2))
    return SquareFunctionResult(total, SQUARE_FUNCTION_CONSTANT * measure.total_mass**2, tuple(M.tolist()))


def moment_square_function_check(N: int, k: int, sigma: float, Ts, tol: float = 1e-10) -> SquareFunctionResult:
    """Square function of M_T = (1/2T) int_{-T}^{T} |sum n^{-sigma-it}|^{2k} dt.

    Bound 3 * 2^{2k+3} (sum_{n<=N} n^{-sigma})^{2k}.
    """
    Ts = _check_sequence(Ts)
    if Ts.size > 30:
        raise CapacityError("at most 30 T values (one quadrature each)")
    P = DirichletPolynomial.unit(N, sigma)
    M = np.array([mean_value_integral(P, k, (-T, T), tol)[0] for T in Ts])
    total = float(np.sum(np.diff(M) ** 2))
    s = float(np.sum(np.arange(1, N + 1, dtype=float) ** -sigma))
    bound = 3.0 * 2.0 ** (2 * k + 3) * s ** (2 * k)
    return SquareFunctionResult(total, bound, tuple(M.tolist()))


# -- mean values -------------------------------------------------------------


@dataclass(frozen=True)
class MeanValueReport:
    """integral vs predicted, with |integral - predicted| <= errorBound + qerr.

    ``one_sided`` reports only test integral - predicted <= errorBound + qerr.
    """

    integral: float
    predicted: float
    error_bound: float
    quadrature_error: float
    parameters: dict = field(default_factory=dict)
    one_sided: bool = False

    @property
    def deviation(self) -> float:
        dev = self.integral - self.predicted
        return dev if self.one_sided else abs(dev)

    @property
    def margin(self) -> float:
        return self.error_bound + self.quadrature_error - self.deviation

    @property
    def passed(self) -> bool:
        return self.margin >= 0

    def to_dict(self):
        return {
            "integral": self.integral,
            "predicted": self.predicted,
            "errorBound": self.error_bound,
            "quadratureError": self.quadrature_error,
            "parameters": dict(self.parameters),
            "oneSided": self.one_sided,
            "pass": self.passed,
        }


def _polynomial(d, frequencies) -> DirichletPolynomial:
    d = np.asarray(d)
    lam = np.asarray(frequencies, dtype=float)
    order = np.argsort(lam, kind="stable")
    return DirichletPolynomial(d[order], 0.0, lam[order])


def _spread(P: DirichletPolynomial) -> float:
    lam = P.lambdas
    return float(lam.max() - lam.min())


def mean_value_integral(P: DirichletPolynomial, k: int, interval, tol: float = 1e-10):
    """(1/(b-a)) int_a^b |P(t)|^{2k} dt; returns (value, quadrature error)."""
    if k < 1:
        raise ValueError("moment order k must be >= 1")
    a, b = map(float, interval)
    if not b > a:
        raise ValueError("need a < b")
    if P.N == 1:
        return float(abs(P.weights[0]) ** (2 * k)), 0.0
    W = k * _spread(P)

    def f(t):
        return np.abs(P(t)) ** (2 * k)

    q = quadrature.mean(f, a, b, W, tol=tol)
    return q.value, q.error


def mv_limit_formula(k: int, N: int, sigma: float, guard: int = RESTRICTED_TABLE_GUARD) -> float:
    """sum_{m <= N^k} d_{k,N}(m)^2 m^{-2 sigma}."""
    table = restricted_divisor_table(k, N, guard=guard)
    m = np.nonzero(table)[0]
    terms = table[m].astype(float) ** 2 * m.astype(float) ** (-2.0 * sigma)
    return math.fsum(terms)


def power_coefficients(P: DirichletPolynomial, k: int, guard: int = RESTRICTED_TABLE_GUARD) -> np.ndarray:
    """b with P(t)^k = sum_m b[m] m^{-it}, i.e. the k-fold Dirichlet convolution of d(n) n^{-sigma}."""
    if not P.uses_log_frequencies:
        raise ValueError("needs the lambda_n = log n convention")
    N = P.N
    if N**k > guard:
        raise CapacityError(f"N^k = {N**k} exceeds enumeration guard {guard}")
    w = np.zeros(N + 1, dtype=complex)
    w[1:] = P.weights
    cur = w.copy()
    for _ in range(k - 1):
        nxt = np.zeros((cur.size - 1) * N + 1, dtype=complex)
        support = np.nonzero(cur)[0]
        for n in range(1, N + 1):
            if w[n] != 0:
                nxt[n * support] += w[n] * cur[support]
        cur = nxt
    return cur


def mean_value_report(P: DirichletPolynomial, k: int, T: float, tol: float = 1e-10) -> MeanValueReport:
    """Mean of |P|^{2k} over [-T, T] against the diagonal sum_m |b_m|^2 of P^k.

    The error bar applies the mean-value inequality to P^k on an interval of
    length 2T: (4 pi / (2T delta)) sum |b_m|^2 with delta the least gap
    between the frequencies log m carried by P^k.
    """
    if T <= 0:
        raise ValueError("T must be positive")
    b = power_coefficients(P, k)
    m = np.nonzero(b)[0]
    predicted = math.fsum(np.abs(b[m]) ** 2)
    if m.size > 1:
        delta = float(np.min(np.diff(np.log(m.astype(float)))))
        bound = 4 * math.pi / (2 * T * delta) * predicted
    else:
        delta, bound = math.inf, 0.0
    value, qerr = mean_value_integral(P, k, (-T, T), tol)
    return MeanValueReport(
        integral=value,
        predicted=predicted,
        error_bound=bound,
        quadrature_error=qerr,
        parameters={"N": P.N, "k": int(k), "sigma": P.sigma, "T": float(T), "delta": delta},
    )


def delta_min(frequencies) -> float:
    """Smallest gap between distinct frequencies."""
    lam = np.sort(np.asarray(frequencies, dtype=float))
    if lam.size < 2:
        raise ValueError("need at least two frequencies")
    gap = float(np.min(np.diff(lam)))
    if gap <= 0:
        raise DegenerateSpacingError("repeated frequency: zero gap")
    return gap


def bilinear_integral(d, frequencies, T: float) -> float:
    """int_0^T |sum d(n) e^{i t lambda_n}|^2 dt, exactly."""
    d = np.asarray(d, dtype=complex)
    lam = np.asarray(frequencies, dtype=float)
    diff = lam[:, None] - lam[None, :]
    off = diff != 0
    kern = np.full(diff.shape, complex(T))
    kern[off] = (np.exp(1j * diff[off] * T) - 1) / (1j * diff[off])
    return float(np.real(d @ kern @ d.conj()))


def montgomery_vaughan_check(d, frequencies, T: float, backend: str = "exact", tol: float = 1e-10) -> MeanValueReport:
    """|int_0^T |sum d e^{i t lambda}|^2 - T sum|d|^2| <= (4 pi/delta) sum |d|^2."""
    if T <= 0:
        raise ValueError("T must be positive")
    d = np.asarray(d)
    lam = np.asarray(frequencies, dtype=float)
    mass = float(np.sum(np.abs(d) ** 2))
    delta = delta_min(lam) if lam.size > 1 else math.inf
    if backend == "exact":
        integral, qerr = bilinear_integral(d, lam, T), 64 * np.finfo(float).eps * max(1.0, T * mass)
    elif backend == "quadrature":
        # |sum d e^{it lambda}| = |sum conj(d) e^{-it lambda}|
        P = _polynomial(np.conj(d), lam)
        value, err = mean_value_integral(P, 1, (0.0, T), tol)
        integral, qerr = value * T, err * T
    else:
        raise ValueError(f"unknown backend {backend!r}")
    return MeanValueReport(
        integral=integral,
        predicted=T * mass,
        error_bound=4 * math.pi / delta * mass,
        quadrature_error=float(qerr),
        parameters={"N": int(d.size), "T": float(T), "delta": delta, "backend": backend},
    )


# -- linear spacing and higher moments ---------------------------------------


@dataclass(frozen=True)
class SpacingReport:
    delta: float
    xi: float
    enumerated_tuples: int
    degenerate: bool
    witness: tuple = ()  # (h, k) exponent vectors realising xi

    def to_dict(self):
        return {
            "delta": self.delta,
            "xi": self.xi,
            "enumeratedTuples": self.enumerated_tuples,
            "degenerate": self.degenerate,
        }


def linear_spacing_coefficient(frequencies, q: int, guard: int = SPACING_GUARD) -> SpacingReport:
    """xi(N, q): least nonzero |sum (h_n - k_n) lambda_n| over h != k in E_q."""
    lam = np.asarray(frequencies, dtype=float)
    N = lam.size
    if N < 1 or q < 1:
        raise ValueError("need N >= 1 and q >= 1")
    size = math.comb(N + q - 1, N - 1)
    if size > guard:
        raise CapacityError(f"|E_q| = {size} exceeds guard {guard}")
    if N == 1:
        return SpacingReport(math.inf, math.inf, size, False)
    combos = np.array(list(combinations_with_replacement(range(N), q)), dtype=np.int64)
    sums = lam[combos].sum(axis=1)
    order = np.argsort(sums, kind="stable")
    gaps = np.diff(sums[order])
    j = int(np.argmin(gaps))
    vec = np.zeros((2, N), dtype=np.int64)
    np.add.at(vec[0], combos[order[j]], 1)
    np.add.at(vec[1], combos[order[j + 1]], 1)
    xi = abs(math.fsum((vec[1] - vec[0]) * lam))
    scale = max(1.0, float(np.max(np.abs(sums))))
    degenerate = xi <= _DEGENERATE_RTOL * scale
    lam_sorted = np.sort(lam)
    delta = float(np.min(np.diff(lam_sorted)))
    return SpacingReport(delta, 0.0 if degenerate else xi, size, bool(degenerate), (tuple(map(int, vec[0])), tuple(map(int, vec[1]))))


def higher_moment_check(d, frequencies, J, q: int, tol: float = 1e-10) -> MeanValueReport:
    """(1/|J|) int_J |sum d e^{i t lambda}|^{2q} <= S^q (q! + 2 min(N^q, pi q!)/(|J| xi)), S = sum|d|^2."""
    d = np.asarray(d)
    lam = np.asarray(frequencies, dtype=float)
    a, b = map(float, J)
    length = b - a
    N = d.size
    mass = float(np.sum(np.abs(d) ** 2))
    fq = math.factorial(q)
    if N == 1:
        xi = math.inf
        tail = 0.0
    else:
        sp = linear_spacing_coefficient(lam, q)
        if sp.degenerate:
            raise DegenerateSpacingError(f"frequencies are linearly dependent at order {q}")
        xi = sp.xi
        tail = mass**q * 2 * min(float(N) ** q, math.pi * fq) / (length * xi)
    value, qerr = mean_value_integral(_polynomial(d, lam), q, (a, b), tol)
    return MeanValueReport(
        integral=value,
        predicted=mass**q * fq,
        error_bound=tail,
        quadrature_error=qerr,
        parameters={"N": int(N), "q": int(q), "J": [a, b], "xi": xi},
        one_sided=True,
    )


# -- majorant principle and Ingham-Mordell -----------------------------------


@dataclass(frozen=True)
class MajorizationResult:
    lhs: float
    rhs: float
    quadrature_error: float

    @property
    def passed(self) -> bool:
        return self.lhs <= MAJORANT_CONSTANT * self.rhs + self.quadrature_error


def majorization_check(c, a, frequencies, q: int, T: float, T0: float, tol: float = 1e-10) -> MajorizationResult:
    """int_{|t-T0|<=T} |sum c e^{it phi}|^{2q} against 3 int_{|t|<=T} |sum a e^{it phi}|^{2q}."""
    c = np.asarray(c, dtype=complex)
    a = np.asarray(a, dtype=float)
    if c.shape != a.shape:
        raise ValueError("c and a must have the same length")
    if np.any(a < 0) or np.any(np.abs(c) > a * (1 + 1e-12)):
        raise ValueError("need |c_n| <= a_n")
    if T <= 0:
        raise ValueError("T must be positive")
    lam = np.asarray(frequencies, dtype=float)
    Pc, Pa = _polynomial(c, lam), _polynomial(a, lam)
    lv, le = mean_value_integral(Pc, q, (T0 - T, T0 + T), tol)
    rv, re = mean_value_integral(Pa, q, (-T, T), tol)
    scale = 2 * T
    return MajorizationResult(lv * scale, rv * scale, (le + MAJORANT_CONSTANT * re) * scale)


@dataclass(frozen=True)
class InghamResult:
    max_coeff: float
    mean_l1: float  # (1/2T) int_{-T}^{T} |P|, T = pi/gamma
    quadrature_error: float
    chain_lower: float
    chain_mean: float
    chain_upper: float

    @property
    def passed(self) -> bool:
        # (1/T) int |P| = 2 * mean_l1
        return self.max_coeff <= 2 * self.mean_l1 + 2 * self.quadrature_error

    @property
    def chain_passed(self) -> bool:
        return self.chain_lower <= self.chain_mean + 1e-9 * max(1.0, self.chain_mean) and self.chain_mean <= self.chain_upper * (1 + 1e-9)


def ingham_mordell_check(a, frequencies, tol: float = 1e-8, chain_factor: float = 20.0) -> InghamResult:
    """max|a_n| <= (1/T) int_{-T}^{T} |sum a e^{it phi}| dt with T = pi/gamma.

    The chain records, on [-cT, cT] with c = ``chain_factor``, the finite-T
    lower bound max_n(|a_n| - sum_{m!=n} |a_m|/(cT|phi_m - phi_n|)) for the
    L1 mean, the L1 mean itself and the largest |P| seen at quadrature nodes.
    """
    a = np.asarray(a, dtype=float)
    phi = np.asarray(frequencies, dtype=float)
    if a.shape != phi.shape or a.size < 1:
        raise ValueError("a and frequencies must be nonempty and equally long")
    amax = float(np.max(np.abs(a)))
    if a.size == 1:
        return InghamResult(amax, amax, 0.0, amax, amax, amax)
    if np.any(np.diff(phi) <= 0):
        if np.any(np.diff(phi) == 0):
            raise DegenerateSpacingError("zero gap between frequencies")
        raise ValueError("frequencies must be increasing")
    gamma = float(np.min(np.diff(phi)))
    T = math.pi / gamma
    P = _polynomial(a, phi)
    W = _spread(P)
    peak = [0.0]

    def f(t):
        v = np.abs(P(t))
        peak[0] = max(peak[0], float(v.max()))
        return v

    q = quadrature.mean(f, -T, T, W, tol=tol)
    TL = chain_factor * T
    qL = quadrature.mean(f, -TL, TL, W, tol=max(tol, 1e-6))
    diff = np.abs(phi[:, None] - phi[None, :])
    np.fill_diagonal(diff, np.inf)
    leak = (np.abs(a)[None, :] / (TL * diff)).sum(axis=1)
    lower = float(np.max(np.abs(a) - leak))
    return InghamResult(amax, q.value, q.error, lower, qL.value - qL.error, peak[0])


# -- divisor moments -----------------------------------------------------------


def divisor_moment_ratio(nu: int, N_values, sieve: FactorSieve):
    """Rows (N, sum_{m<=N} d_nu(m)^2/m, that sum / (log N)^{nu^2})."""
    N_values = [int(N) for N in N_values]
    if not N_values or min(N_values) < 2:
        raise ValueError("each N must be >= 2")
    top = max(N_values)
    if top > sieve.limit:
        raise ValueError(f"N={top} exceeds sieve limit {sieve.limit}")
    dk = sieve.divisor_count_table(nu, top).astype(float)
    m = np.arange(top + 1, dtype=float)
    m[0] = 1.0
    terms = dk**2 / m
    terms[0] = 0.0
    partial = np.cumsum(terms)
    return [(N, float(partial[N]), float(partial[N] / math.log(N) ** (nu * nu))) for N in N_values]


def divisor_moment_slope(nu: int, N_values, sieve: FactorSieve) -> float:
    """Least-squares slope of log(sum d_nu^2(m)/m) against log log N."""
    rows = divisor_moment_ratio(nu, N_values, sieve)
    x = np.log(np.log([r[0] for r in rows]))
    y = np.log([r[1] for r in rows])
    return float(np.polyfit(x, y, 1)[0])


# -- randomized suites ---------------------------------------------------------


def _rng(seed, trial):
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed, spawn_key=(trial,))))


_SMALL_PRIMES = np.array([2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47])


def _case_prop2(rng):
    N = int(rng.integers(1, 65))
    d = rng.normal(size=N) + 1j * rng.normal(size=N) * rng.integers(0, 2)
    if rng.random() < 0.5:
        lam = np.log(np.sort(rng.choice(np.arange(1, 4 * N + 2), N, replace=False)).astype(float))
    else:
        lam = np.sort(rng.uniform(0, 10, N))
        while N > 1 and np.min(np.diff(lam)) == 0:
            lam = np.sort(rng.uniform(0, 10, N))
    T = float(10 ** rng.uniform(-1, 3))
    return montgomery_vaughan_check(d, lam, T)


def _case_prop3(rng):
    N = int(rng.integers(1, 6))
    q = int(rng.integers(1, 4))
    if rng.random() < 0.5:
        lam = np.log(np.sort(rng.choice(_SMALL_PRIMES, N, replace=False)).astype(float))
    else:
        lam = np.sort(rng.uniform(0, 3, N))
    d = rng.normal(size=N)
    a = float(rng.uniform(-100, 100))
    L = float(10 ** rng.uniform(0, 2))
    return higher_moment_check(d, lam, (a, a + L), q)


def _case_majorization(rng):
    N = int(rng.integers(1, 9))
    q = int(rng.integers(1, 3))
    a = rng.uniform(0, 1, N)
    c = a * rng.uniform(0, 1, N) * np.exp(2j * math.pi * rng.random(N))
    phi = np.sort(rng.uniform(0, 5, N))
    T = float(rng.uniform(1, 50))
    T0 = float(rng.uniform(-100, 100))
    return majorization_check(c, a, phi, q, T, T0)


def _case_ingham(rng):
    N = int(rng.integers(1, 7))
    phi = np.cumsum(rng.uniform(0.1, 2.0, N))
    a = rng.normal(size=N)
    return ingham_mordell_check(a, phi)


def _case_sqfn(rng):
    K = int(rng.integers(1, 21))
    x = rng.uniform(-5, 5, K)
    w = rng.dirichlet(np.ones(K)) * rng.uniform(0, 10)
    nu = AtomicMeasure(x, w)
    x0 = float(x[rng.integers(K)]) if rng.random() < 0.5 else float(rng.uniform(-5, 5))
    return square_function_check(nu, x0, 2.0 ** np.arange(40))


def _margin(result):
    if isinstance(result, MeanValueReport):
        return result.margin
    if isinstance(result, MajorizationResult):
        return MAJORANT_CONSTANT * result.rhs + result.quadrature_error - result.lhs
    if isinstance(result, InghamResult):
        return 2 * result.mean_l1 + 2 * result.quadrature_error - result.max_coeff
    return result.bound - result.total


CHECK_SUITES = {
    "prop2": _case_prop2,
    "prop3": _case_prop3,
    "majorization": _case_majorization,
    "ingham": _case_ingham,
    "sqfn": _case_sqfn,
}


def check_suite(which: str, trials: int, seed: int = 0):
    """Run ``trials`` seeded random configurations of one inequality check.

    Returns a summary dict with pass/fail counts and the worst margin (bound
    minus observed, negative on failure).
    """
    if which not in CHECK_SUITES:
        raise ValueError(f"unknown check {which!r}; choose from {sorted(CHECK_SUITES)}")
    if trials < 1:
        raise ValueError("trials must be >= 1")
    case = CHECK_SUITES[which]
    passed, worst, worst_at, extra = 0, math.inf, -1, 0
    for i in range(trials):
        r = case(_rng(seed, i))
        ok = r.passed
        if isinstance(r, InghamResult):
            ok = ok and r.chain_passed
            extra += not r.chain_passed
        passed += ok
        m = _margin(r)
        if m < worst:
            worst, worst_at = m, i
    out = {
        "which": which,
        "trials": trials,
        "seed": seed,
        "passCount": passed,
        "failCount": trials - passed,
        "worstMargin": worst,
        "worstTrial": worst_at,
    }
    if which == "ingham":
        out["chainFailures"] = extra
    return out
