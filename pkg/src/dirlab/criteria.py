"""Arithmetic inequalities tied to RH, colossally abundant numbers, and the
zero-free boundary.

Scans are vectorized over sieve tables; any margin smaller than 1e-9 is
re-decided in 40-digit decimal arithmetic so float rounding never flips a
verdict.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from decimal import Decimal, localcontext

import numpy as np

from .exceptions import ConstructionError
from .sieve import FactoredInteger, FactorSieve, build_sieve, harmonic_number, harmonic_numbers

__all__ = [
    "EULER_GAMMA",
    "CriterionVerdict",
    "ScanResult",
    "CaSequence",
    "robin_check",
    "robin_scan",
    "lagarias_check",
    "lagarias_scan",
    "grytczuk_check",
    "grytczuk_scan",
    "colossally_abundant",
    "verify_ca_member",
    "ca_extrema_profile",
    "ford_zero_free_sigma",
]

EULER_GAMMA = 0.5772156649015329
_EXP_GAMMA = math.exp(EULER_GAMMA)
_GAMMA_DEC = Decimal("0.5772156649015329")
GRYTCZUK_MIN = 9843  # least odd n > 3^9 / 2
GRYTCZUK_FACTOR = 39 / 40
RECHECK_BELOW = 1e-9
WINDOW = 2**20


@dataclass(frozen=True)
class CriterionVerdict:
    n: object  # int or FactoredInteger
    lhs: float
    rhs: float
    holds: bool

    @property
    def margin(self) -> float:
        return self.rhs - self.lhs

    def to_dict(self):
        return {"n": str(self.n), "lhs": self.lhs, "rhs": self.rhs, "holds": self.holds, "margin": self.margin}


@dataclass(frozen=True)
class ScanResult:
    criterion: str
    start: int
    stop: int
    violations: list
    min_margin: float
    argmin: int
    checked: int

    def to_dict(self):
        return {
            "criterion": self.criterion,
            "range": [self.start, self.stop],
            "violations": [int(v) for v in self.violations],
            "minMargin": self.min_margin,
            "argmin": self.argmin,
            "checked": self.checked,
        }


def _exact_robin(sigma_n, n, factor=Decimal(1)):
    """rhs - lhs for sigma(n)/n < factor e^gamma loglog n in decimal arithmetic."""
    with localcontext() as ctx:
        ctx.prec = 40
        lhs = Decimal(int(sigma_n)) / Decimal(int(n))
        rhs = factor * _GAMMA_DEC.exp() * Decimal(int(n)).ln().ln()
        return rhs - lhs


def _exact_lagarias(sigma_n, n):
    with localcontext() as ctx:
        ctx.prec = 40
        H = Decimal(harmonic_number(int(n)))
        return H + H.exp() * H.ln() - Decimal(int(sigma_n))


def _sigma(sieve, n):
    return int(sieve.sigma_table(n)[n])


def robin_check(sieve: FactorSieve, n: int) -> CriterionVerdict:
    """sigma(n)/n < e^gamma log log n (strict)."""
    if n < 3:
        raise ValueError("need n >= 3 so that log log n > 0")
    if n > sieve.limit:
        raise ValueError(f"n={n} exceeds sieve limit {sieve.limit}")
    s = _sigma(sieve, n)
    lhs, rhs = s / n, _EXP_GAMMA * math.log(math.log(n))
    holds = lhs < rhs
    if abs(rhs - lhs) < RECHECK_BELOW:
        holds = _exact_robin(s, n) > 0
    return CriterionVerdict(n, lhs, rhs, holds)


def lagarias_check(sieve: FactorSieve, n: int) -> CriterionVerdict:
    """sigma(n) <= H_n + e^{H_n} log H_n (non-strict)."""
    if n < 1:
        raise ValueError("need n >= 1")
    if n > sieve.limit:
        raise ValueError(f"n={n} exceeds sieve limit {sieve.limit}")
    s = _sigma(sieve, n) if n > 1 else 1
    H = harmonic_number(n)
    rhs = H + math.exp(H) * math.log(H)
    holds = s <= rhs
    if abs(rhs - s) < RECHECK_BELOW * max(1.0, rhs):
        holds = _exact_lagarias(s, n) >= 0
    return CriterionVerdict(n, float(s), rhs, holds)


def grytczuk_check(sieve: FactorSieve, n: int):
    """(sigma(2n)/2n < (39/40) e^gamma loglog 2n, sigma(n)/n < e^gamma loglog n) for odd n > 3^9/2."""
    if n % 2 == 0:
        raise ValueError("n must be odd")
    if n < GRYTCZUK_MIN:
        raise ValueError(f"need n > 3^9/2, i.e. n >= {GRYTCZUK_MIN}")
    if 2 * n > sieve.limit:
        raise ValueError(f"2n={2 * n} exceeds sieve limit {sieve.limit}")
    table = sieve.sigma_table(2 * n)
    verdicts = []
    for m, factor in ((2 * n, GRYTCZUK_FACTOR), (n, 1.0)):
        s = int(table[m])
        lhs, rhs = s / m, factor * _EXP_GAMMA * math.log(math.log(m))
        holds = lhs < rhs
        if abs(rhs - lhs) < RECHECK_BELOW:
            holds = _exact_robin(s, m, Decimal(39) / Decimal(40) if m != n else Decimal(1)) > 0
        verdicts.append(CriterionVerdict(m, lhs, rhs, holds))
    return verdicts[0], verdicts[1]


def _scan(name, start, stop, margins_for, recheck):
    violations, best, arg, checked = [], math.inf, start, 0
    for lo in range(start, stop + 1, WINDOW):
        hi = min(stop, lo + WINDOW - 1)
        n, margin = margins_for(lo, hi)
        if n.size == 0:
            continue
        checked += n.size
        bad = margin <= 0
        near = np.abs(margin) < RECHECK_BELOW
        for idx in np.nonzero(near)[0]:
            bad[idx] = not recheck(int(n[idx]))
        violations.extend(n[bad].tolist())
        j = int(np.argmin(margin))
        if margin[j] < best:
            best, arg = float(margin[j]), int(n[j])
    return ScanResult(name, start, stop, sorted(violations), best, arg, checked)


def _range_check(sieve, start, stop, lo_allowed):
    if start < lo_allowed or stop < start:
        raise ValueError(f"need {lo_allowed} <= from <= to")
    if stop > sieve.limit:
        raise ValueError(f"to={stop} exceeds sieve limit {sieve.limit}")


def robin_scan(sieve: FactorSieve, start: int, stop: int) -> ScanResult:
    """All n in [start, stop] with sigma(n)/n >= e^gamma log log n."""
    _range_check(sieve, start, stop, 3)
    sig = sieve.sigma_table(stop)

    def margins(lo, hi):
        n = np.arange(lo, hi + 1)
        return n, _EXP_GAMMA * np.log(np.log(n)) - sig[lo : hi + 1] / n

    def recheck(n):
        return _exact_robin(sig[n], n) > 0

    return _scan("robin", start, stop, margins, recheck)


def lagarias_scan(sieve: FactorSieve, start: int, stop: int) -> ScanResult:
    """All n in [start, stop] with sigma(n) > H_n + e^{H_n} log H_n."""
    _range_check(sieve, start, stop, 1)
    sig = sieve.sigma_table(max(stop, 2))
    H = harmonic_numbers(stop)

    def margins(lo, hi):
        n = np.arange(lo, hi + 1)
        h = H[lo : hi + 1]
        rhs = h + np.exp(h) * np.log(h)
        # relative margin so the near-tie test is scale free; ties are re-decided exactly
        return n, (rhs - sig[lo : hi + 1]) / np.maximum(1.0, rhs)

    def recheck(n):
        return _exact_lagarias(sig[n] if n > 1 else 1, n) >= 0

    return _scan("lagarias", start, stop, margins, recheck)


def grytczuk_scan(sieve: FactorSieve, start: int, stop: int) -> ScanResult:
    """Odd n in [start, stop], n > 3^9/2, violating either inequality."""
    start = max(start, GRYTCZUK_MIN)
    if start % 2 == 0:
        start += 1
    _range_check(sieve, start, stop, GRYTCZUK_MIN)
    if 2 * stop > sieve.limit:
        raise ValueError(f"2*to={2 * stop} exceeds sieve limit {sieve.limit}")
    sig = sieve.sigma_table(2 * stop)

    def margins(lo, hi):
        n = np.arange(lo + (lo % 2 == 0), hi + 1, 2)
        even = GRYTCZUK_FACTOR * _EXP_GAMMA * np.log(np.log(2 * n)) - sig[2 * n] / (2 * n)
        odd = _EXP_GAMMA * np.log(np.log(n)) - sig[n] / n
        return n, np.minimum(even, odd)

    def recheck(n):
        return _exact_robin(sig[2 * n], 2 * n, Decimal(39) / Decimal(40)) > 0 and _exact_robin(sig[n], n) > 0

    return _scan("grytczuk", start, stop, margins, recheck)


# -- colossally abundant numbers ---------------------------------------------


def _critical_epsilon(p: int, k: int) -> float:
    """The eps at which the exponent of p in the CA number rises from k-1 to k."""
    geometric = (p ** (k + 1) - p) // (p - 1)  # p + ... + p^k
    return math.log1p(1.0 / geometric) / math.log(p)


@dataclass(frozen=True, eq=False)
class CaSequence:
    """members[i] maximizes sigma(m)/m^{1+eps} for eps in intervals[i]."""

    epsilon_breakpoints: tuple  # decreasing; members[i] appears at breakpoint i
    numbers: tuple  # FactoredInteger
    intervals: tuple  # (eps_low, eps_high)

    def values(self):
        return [x.value for x in self.numbers]

    def to_dict(self):
        return {
            "members": [
                {
                    "value": str(x.value),
                    "factors": [[p, a] for p, a in x.factors],
                    "logValue": x.log_value,
                    "epsilonInterval": list(iv),
                }
                for x, iv in zip(self.numbers, self.intervals)
            ]
        }


def _next_prime(p: int) -> int:
    q = p + 1
    while any(q % r == 0 for r in range(2, math.isqrt(q) + 1)):
        q += 1
    return q


def _greedy_steps():
    """Yield (eps, primes multiplied) in decreasing eps order; ties are merged."""
    heap = [(-_critical_epsilon(2, 1), 2, 1)]
    largest = 2
    pending = None
    while True:
        neg, p, k = heapq.heappop(heap)
        heapq.heappush(heap, (-_critical_epsilon(p, k + 1), p, k + 1))
        if p == largest:
            largest = _next_prime(p)
            heapq.heappush(heap, (-_critical_epsilon(largest, 1), largest, 1))
        if pending is not None and pending[0] == -neg:
            pending[1].append(p)
            continue
        if pending is not None:
            yield pending[0], tuple(pending[1])
        pending = (-neg, [p])


def verify_ca_member(x: FactoredInteger, eps: float, sieve: FactorSieve, bound: int):
    """Worst violation of the defining inequality over m <= bound (<= 0 means verified).

    Returns max over m != x of f(m) - f(x) (m < x) and f(m) - f(x) + tiny (m > x)
    with f(m) = log sigma(m) - (1 + eps) log m.
    """
    bound = min(bound, sieve.limit)
    sig = sieve.sigma_table(bound).astype(float)
    m = np.arange(1, bound + 1)
    f = np.log(sig[1:]) - (1 + eps) * np.log(m.astype(float))
    fx = math.log(x.sigma()) - (1 + eps) * x.log_value
    v = x.value
    below = f[m < v] - fx
    above = f[m > v] - fx
    worst = -math.inf
    if below.size:
        worst = max(worst, float(below.max()) - 1e-12 * abs(fx))
    if above.size:
        worst = max(worst, float(above.max()) + 1e-15)
    return worst


def colossally_abundant(count: int, verify_bound: int = 10**7, sieve: FactorSieve | None = None) -> CaSequence:
    """First ``count`` CA numbers, each verified against all m <= min(bound, 4x)."""
    if count < 1:
        raise ValueError("count must be >= 1")
    exps: dict[int, int] = {}
    members, breaks = [], []
    steps = _greedy_steps()
    eps, primes = next(steps)
    while len(members) < count + 1:
        if len(members) == count:
            breaks.append(eps)
            break
        for p in primes:
            exps[p] = exps.get(p, 0) + 1
        factors = tuple(sorted(exps.items()))
        members.append(FactoredInteger(factors, math.fsum(a * math.log(p) for p, a in factors)))
        breaks.append(eps)
        eps, primes = next(steps)
    intervals = tuple((breaks[i + 1], breaks[i]) for i in range(count))
    numbers = tuple(members[:count])
    need = min(verify_bound, 4 * max(x.value for x in numbers))
    if sieve is None or sieve.limit < need:
        sieve = build_sieve(max(need, 2))
    for x, (lo, hi) in zip(numbers, intervals):
        scan = min(verify_bound, 4 * x.value)
        worst = verify_ca_member(x, 0.5 * (lo + hi), sieve, scan)
        if worst > 0:
            raise ConstructionError(f"{x} fails the defining inequality (excess {worst:.3g})")
    return CaSequence(tuple(breaks[:count]), numbers, intervals)


def ca_extrema_profile(seq: CaSequence):
    """(x, sigma(x)/(x log log x), local-extremum flag); x = 2 is skipped (log log 2 < 0)."""
    pts = [x for x in seq.numbers if x.log_value > 1.0]
    if len(pts) < 3:
        raise ValueError("need at least 3 members with log log x > 0")
    vals = [x.sigma_ratio() / math.log(x.log_value) for x in pts]
    out = []
    for i, (x, v) in enumerate(zip(pts, vals)):
        flag = False
        if 0 < i < len(vals) - 1:
            a, b = vals[i - 1], vals[i + 1]
            flag = (v > a and v > b) or (v < a and v < b)
        out.append((x, v, flag))
    return out


def ford_zero_free_sigma(t: float) -> float:
    """1 - 1/(57.54 (log|t|)^{2/3} (log log|t|)^{1/3})."""
    at = abs(t)
    if at < 3:
        raise ValueError("need |t| >= 3")
    L = math.log(at)
    return 1.0 - 1.0 / (57.54 * L ** (2 / 3) * math.log(L) ** (1 / 3))
