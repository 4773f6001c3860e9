import math
from decimal import Decimal, getcontext
from fractions import Fraction

import pytest

from dirlab import criteria as cr
from dirlab.exceptions import ConstructionError
from dirlab.sieve import FactoredInteger

GAMMA = 0.57721566490153286


def naive_sigma(n):
    s, d = 0, 1
    while d * d <= n:
        if n % d == 0:
            s += d + (n // d if d * d != n else 0)
        d += 1
    return s


def test_robin_small_violators_match_direct_computation(sieve):
    res = cr.robin_scan(sieve, 3, 5040)
    want = [n for n in range(3, 5041) if naive_sigma(n) / n >= math.exp(GAMMA) * math.log(math.log(n))]
    assert res.violations == want
    assert res.violations[-1] == 5040
    assert not cr.robin_check(sieve, 5040).holds
    assert cr.robin_check(sieve, 5041).holds


def test_lagarias_small_range_exact():
    from dirlab.sieve import build_sieve

    s = build_sieve(3000)
    res = cr.lagarias_scan(s, 1, 3000)
    assert res.violations == []
    getcontext().prec = 40
    for n in (1, 2, 12, 60, 2520):
        H = Decimal(Fraction(sum(Fraction(1, j) for j in range(1, n + 1))).numerator) / Decimal(
            sum(Fraction(1, j) for j in range(1, n + 1)).denominator
        )
        assert naive_sigma(n) <= H + H.exp() * H.ln()
        assert cr.lagarias_check(s, n).holds


def test_lagarias_equality_at_one():
    from dirlab.sieve import build_sieve

    v = cr.lagarias_check(build_sieve(10), 1)
    assert v.holds and v.lhs == pytest.approx(v.rhs)


def test_grytczuk_check_and_minimum(sieve):
    even, odd = cr.grytczuk_check(sieve, 10395)
    assert even.holds and odd.holds and even.n == 20790
    with pytest.raises(ValueError):
        cr.grytczuk_check(sieve, 9841)
    with pytest.raises(ValueError):
        cr.grytczuk_check(sieve, 10000)
    res = cr.grytczuk_scan(sieve, 9000, 12000)
    assert res.start == 9843 and res.violations == []
    assert res.checked == len(range(9843, 12001, 2))


def test_ca_numbers_known_prefix():
    seq = cr.colossally_abundant(10, verify_bound=10**6)
    assert seq.values() == [2, 6, 12, 60, 120, 360, 2520, 5040, 55440, 720720]
    lows = [lo for lo, _ in seq.intervals]
    highs = [hi for _, hi in seq.intervals]
    assert all(lo < hi for lo, hi in seq.intervals)
    assert lows[:-1] == highs[1:]


def test_ca_members_maximize_on_interval():
    from dirlab.sieve import build_sieve

    s = build_sieve(200000)
    seq = cr.colossally_abundant(8, verify_bound=200000, sieve=s)
    for x, (lo, hi) in zip(seq.numbers, seq.intervals):
        for eps in (lo + 0.25 * (hi - lo), 0.5 * (lo + hi), hi - 0.25 * (hi - lo)):
            fx = math.log(x.sigma()) - (1 + eps) * x.log_value
            best = max(math.log(naive_sigma(m)) - (1 + eps) * math.log(m) for m in range(1, min(4 * x.value, 25000)))
            assert fx >= best - 1e-12


def test_verify_rejects_non_member(small_sieve):
    bad = FactoredInteger(((2, 2), (3, 1), (5, 1), (7, 1)))  # 420 is not CA
    assert cr.verify_ca_member(bad, 0.1, small_sieve, 10**4) > 0


def test_extrema_profile():
    seq = cr.colossally_abundant(14, verify_bound=10**5)
    prof = cr.ca_extrema_profile(seq)
    assert prof[0][0].value == 6
    for x, v, _ in prof:
        assert v == pytest.approx(x.sigma() / x.value / math.log(math.log(x.value)), rel=1e-12)


def test_ford_boundary():
    v = cr.ford_zero_free_sigma(1e6)
    L = math.log(1e6)
    assert v == pytest.approx(1 - 1 / (57.54 * L ** (2 / 3) * math.log(L) ** (1 / 3)))
    assert 0.9 < v < 1
    with pytest.raises(ValueError):
        cr.ford_zero_free_sigma(2)


def test_scan_argument_errors(small_sieve):
    with pytest.raises(ValueError):
        cr.robin_scan(small_sieve, 2, 100)
    with pytest.raises(ValueError):
        cr.robin_scan(small_sieve, 3, 10**5)
    with pytest.raises(ValueError):
        cr.colossally_abundant(0)
    assert issubclass(ConstructionError, RuntimeError)
