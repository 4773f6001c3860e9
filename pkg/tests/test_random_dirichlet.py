import math

import numpy as np
import pytest

from dirlab import random_dirichlet as rd


def test_signs_balanced_and_reproducible():
    a = rd.sample_signs(20000, seed=3, stream=1)
    b = rd.sample_signs(20000, seed=3, stream=1)
    c = rd.sample_signs(20000, seed=3, stream=2)
    assert np.array_equal(a.signs, b.signs) and not np.array_equal(a.signs, c.signs)
    assert set(np.unique(a.signs)) == {-1, 1}
    assert abs(a.signs.mean()) < 4 / math.sqrt(20000)


def test_unit_profile(small_sieve):
    p = rd.coefficient_profile("unit", small_sieve, 10)
    assert p.summary() == {"D1": 10.0, "D2": 10.0, "D1tilde": 1.0, "D2tilde": 1.0, "tauD": 4}


def test_coprime_profile(small_sieve):
    p = rd.coefficient_profile("coprime:6", small_sieve, 10)
    assert p.coefficients.tolist() == [1, 0, 0, 0, 1, 0, 1, 0, 0, 0]
    assert p.D2[10] == 3.0
    assert p.tau_d == 4 and p.H_d == (3, 4)


def test_lambda_profile(small_sieve):
    p = rd.coefficient_profile("lambda:1.2", small_sieve, 12)
    assert p.d[8] == pytest.approx(1.2**3)
    assert p.d[12] == pytest.approx(1.2**3)
    for bad in ("lambda:1.5", "lambda:0", "bogus"):
        with pytest.raises(ValueError):
            rd.coefficient_profile(bad, small_sieve, 12)


def test_smooth_support(small_sieve):
    assert rd.smooth_support(small_sieve, 20, 2).tolist() == [2, 3, 4, 6, 8, 9, 12, 16, 18]
    p = rd.coefficient_profile("smooth:2", small_sieve, 20)
    assert p.tau_d == 2


def test_custom_and_callable_rules(small_sieve):
    p = rd.coefficient_profile(lambda n: (-1.0) ** n, small_sieve, 5)
    assert p.coefficients.tolist() == [-1, 1, -1, 1, -1]
    p = rd.coefficient_profile([2.0, 0.0, 1.0], small_sieve, 3)
    assert p.rule == "custom" and p.D2[3] == 5.0


def test_lb_cells_by_hand(small_sieve):
    cells = rd.lb_cells(small_sieve, 10)
    assert {j: c.tolist() for j, c in cells.items()} == {3: [5, 10], 4: [7]}
    p = rd.coefficient_profile("unit", small_sieve, 10)
    assert rd.theorem_lb_bound(p, small_sieve, 10, 0.0) == pytest.approx(math.sqrt(2) + 1)


def test_t2_regimes(small_sieve):
    unit = rd.coefficient_profile("unit", small_sieve, 10**4)
    b = rd.theorem_t2_bound(unit, 10**4, 0.0)
    assert b.regime == 1 and not b.degenerate
    L = math.log(1e4)
    assert b.B == pytest.approx(100 * math.sqrt(1229 / L))
    smooth = rd.coefficient_profile("smooth:1", small_sieve, 300)
    b = rd.theorem_t2_bound(smooth, 300, 0.0)
    assert b.regime == 3 and b.degenerate
    lower, upper = b.thresholds
    assert lower < upper


def test_expected_sup_independent_of_jobs(small_sieve):
    p = rd.coefficient_profile("unit", small_sieve, 32)
    a = rd.expected_sup_mc(p, 32, 0.0, 4, small_sieve, restarts=2, iterations=2, seed=5, jobs=1)
    b = rd.expected_sup_mc(p, 32, 0.0, 4, small_sieve, restarts=2, iterations=2, seed=5, jobs=2)
    assert a[0] == b[0] and np.array_equal(a[2], b[2])
    # each sup is at least the Bohr bound sum_p 1 and at most sum |d|
    assert np.all(a[2] >= small_sieve.prime_count(32) - 1e-9) and np.all(a[2] <= 32 + 1e-9)


def test_halasz_study_rows(small_sieve):
    s = rd.halasz_ratio_study("unit", [32, 16], 0.25, 3, small_sieve, restarts=2, iterations=2, seed=1)
    assert [r["N"] for r in s.rows] == [16, 32]
    r = s.rows[1]
    assert r["ratio"] == pytest.approx(r["meanSup"] * math.log(32) / 32**0.75)
    assert s.ratio_spread >= 1.0
    with pytest.raises(ValueError):
        rd.halasz_ratio_study("unit", [16], 0.5, 3, small_sieve)
