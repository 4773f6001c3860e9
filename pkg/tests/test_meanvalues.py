import math
from itertools import product

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from dirlab import meanvalues as mv
from dirlab.dirichlet import DirichletPolynomial
from dirlab.exceptions import CapacityError, DegenerateSpacingError
from dirlab.sieve import restricted_divisor_table


def xi_oracle(lam, q):
    """min nonzero |sum (h - k) lambda| over pairs of exponent vectors with sum q."""
    N = len(lam)
    vecs = [v for v in product(range(q + 1), repeat=N) if sum(v) == q]
    best = math.inf
    for h in vecs:
        for k in vecs:
            if h != k:
                best = min(best, abs(math.fsum((a - b) * x for a, b, x in zip(h, k, lam))))
    return best, len(vecs)


def test_two_term_closed_form():
    sigma, T = 0.5, 37.0
    P = DirichletPolynomial.unit(2, sigma)
    value, err = mv.mean_value_integral(P, 1, (-T, T))
    L = math.log(2)
    want = 1 + 2 ** (-2 * sigma) + 2 * 2 ** (-sigma) * math.sin(T * L) / (T * L)
    assert value == pytest.approx(want, abs=1e-12)
    assert err < 1e-10


def test_single_term_is_exact():
    P = DirichletPolynomial([3.0], 0.0)
    assert mv.mean_value_integral(P, 2, (-5.0, 5.0)) == (81.0, 0.0)


@pytest.mark.parametrize("k,N", [(1, 5), (2, 3), (3, 2)])
def test_limit_formula_matches_table(k, N):
    b = restricted_divisor_table(k, N)
    m = np.arange(1, b.size)
    want = float(np.sum(b[1:] ** 2 / m**1.0))
    assert mv.mv_limit_formula(k, N, 0.5) == pytest.approx(want, rel=1e-14)
    assert mv.mv_limit_formula(1, 3, 0.5) == pytest.approx(11 / 6)


def test_power_coefficients_are_restricted_divisors():
    P = DirichletPolynomial.unit(4, 0.0)
    b = mv.power_coefficients(P, 3)
    assert np.allclose(b, restricted_divisor_table(3, 4))


def test_mean_value_report_within_bound():
    rep = mv.mean_value_report(DirichletPolynomial.unit(6, 0.5), 1, 500.0)
    assert rep.passed
    assert abs(rep.integral - rep.predicted) <= rep.error_bound
    assert set(rep.to_dict()) == {"integral", "predicted", "errorBound", "quadratureError", "parameters", "oneSided", "pass"}


def test_bilinear_matches_quadrature():
    rng = np.random.default_rng(3)
    d = rng.normal(size=6) + 1j * rng.normal(size=6)
    lam = np.sort(rng.uniform(0, 4, 6))
    a = mv.montgomery_vaughan_check(d, lam, 25.0, "exact")
    b = mv.montgomery_vaughan_check(d, lam, 25.0, "quadrature")
    assert a.integral == pytest.approx(b.integral, rel=1e-9)
    assert a.passed and b.passed


def test_delta_min_and_degenerate():
    assert mv.delta_min([0.0, 0.5, 2.0]) == 0.5
    with pytest.raises(DegenerateSpacingError):
        mv.delta_min([1.0, 1.0])


def test_spacing_two_logs():
    rep = mv.linear_spacing_coefficient([math.log(2), math.log(3)], 2)
    assert rep.xi == pytest.approx(math.log(1.5), rel=1e-14)
    assert rep.enumerated_tuples == 3
    h, k = rep.witness
    assert all(type(v) is int for v in h + k)


def test_spacing_powers_of_two():
    # order-2 sums of log 2, log 4 are 2, 3, 4 times log 2: not degenerate
    rep = mv.linear_spacing_coefficient([math.log(2), math.log(4)], 2)
    assert not rep.degenerate and rep.xi == pytest.approx(math.log(2))
    # log 2 + log 8 = 2 log 4
    rep = mv.linear_spacing_coefficient([math.log(2), math.log(4), math.log(8)], 2)
    assert rep.degenerate and rep.xi == 0.0
    with pytest.raises(DegenerateSpacingError):
        mv.higher_moment_check([1.0, 1.0, 1.0], [math.log(2), math.log(4), math.log(8)], (0, 10), 2)


def test_spacing_guard():
    with pytest.raises(CapacityError):
        mv.linear_spacing_coefficient(np.arange(1.0, 60.0), 6)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.floats(0.0, 5.0), min_size=2, max_size=5, unique=True), st.integers(1, 3))
def test_spacing_against_oracle_random(lam, q):
    lam = sorted(lam)
    rep = mv.linear_spacing_coefficient(lam, q)
    want, size = xi_oracle(lam, q)
    assert rep.enumerated_tuples == size
    if not rep.degenerate:
        assert rep.xi == pytest.approx(want, rel=1e-9, abs=1e-12)


def test_higher_moment_q1_consistent_with_mean_value():
    lam = np.log([2.0, 3.0, 5.0])
    d = np.array([1.0, -0.5, 2.0])
    hm = mv.higher_moment_check(d, lam, (0.0, 40.0), 1)
    mvr = mv.montgomery_vaughan_check(d, lam, 40.0)
    assert hm.passed and mvr.passed
    assert hm.integral == pytest.approx(mvr.integral / 40.0, rel=1e-9)


def test_fourier_mean_limits():
    nu = mv.AtomicMeasure([0.0, 1.0, 1.0], [2.0, 0.5, 0.25])
    assert nu.mass_at(1.0) == 0.75 and nu.total_mass == 2.75
    assert mv.fourier_mean(nu, 0.0, 1e-9) == pytest.approx(2.75)
    assert mv.fourier_mean(nu, 1.0, 1e9) == pytest.approx(0.75, abs=1e-8)


def test_square_function_direct_sum():
    nu = mv.AtomicMeasure([0.3, -1.2], [1.0, 2.0])
    Ts = [1.0, 2.0, 4.0]
    r = mv.square_function_check(nu, 0.0, Ts)
    M = [sum(w * math.sin(T * x) / (T * x) for x, w in [(0.3, 1.0), (-1.2, 2.0)]) for T in Ts]
    assert r.total == pytest.approx((M[1] - M[0]) ** 2 + (M[2] - M[1]) ** 2, rel=1e-13)
    assert r.bound == 24 * 9.0 and r.passed


def test_moment_square_function_small():
    r = mv.moment_square_function_check(3, 1, 0.5, 2.0 ** np.arange(8))
    assert r.passed
    s = 1 + 2**-0.5 + 3**-0.5
    assert r.bound == pytest.approx(3 * 2**5 * s**2)
    with pytest.raises(CapacityError):
        mv.moment_square_function_check(2, 1, 0.5, np.arange(1.0, 40.0))


def test_majorization_equal_coefficients():
    a = np.array([1.0, 0.5, 0.25])
    phi = np.array([0.0, 1.0, 2.7])
    r = mv.majorization_check(a, a, phi, 1, 10.0, 0.0)
    assert r.lhs == pytest.approx(r.rhs, rel=1e-10) and r.passed
    with pytest.raises(ValueError):
        mv.majorization_check(2 * a, a, phi, 1, 10.0, 0.0)


def test_ingham_mordell_examples():
    r = mv.ingham_mordell_check([1.0, -2.0, 0.5], [0.0, 1.0, 2.5])
    assert r.passed and r.chain_passed
    assert r.max_coeff == 2.0
    with pytest.raises(DegenerateSpacingError):
        mv.ingham_mordell_check([1.0, 1.0], [1.0, 1.0])


def test_divisor_moment_rows(small_sieve):
    rows = mv.divisor_moment_ratio(1, [10, 100], small_sieve)
    H10 = sum(1 / m for m in range(1, 11))
    assert rows[0][1] == pytest.approx(H10, rel=1e-14)
    d2 = small_sieve.divisor_count_table(2, 100)
    want = sum(d2[m] ** 2 / m for m in range(1, 101))
    rows = mv.divisor_moment_ratio(2, [100], small_sieve)
    assert rows[0][1] == pytest.approx(want, rel=1e-13)
    assert rows[0][2] == pytest.approx(want / math.log(100) ** 4)


@pytest.mark.parametrize("which,trials", [("prop2", 50), ("prop3", 30), ("majorization", 30), ("ingham", 20), ("sqfn", 100)])
def test_check_suites_clean_and_seeded(which, trials):
    a = mv.check_suite(which, trials, seed=11)
    b = mv.check_suite(which, trials, seed=11)
    assert a == b
    assert a["failCount"] == 0 and a["passCount"] == trials
    with pytest.raises(ValueError):
        mv.check_suite("nope", 1)
