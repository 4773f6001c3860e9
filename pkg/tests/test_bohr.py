import math

import numpy as np
import pytest

from dirlab.bohr import (
    bohr_lower_bound,
    kronecker_sup,
    lift,
    queffelec_constant,
    queffelec_lower_bound,
    sup_estimate,
    torus_eval,
    torus_point,
)
from dirlab.dirichlet import DirichletPolynomial, rudin_shapiro_coefficients


def random_poly(rng, N, sigma=0.0, complex_coeffs=False):
    d = rng.normal(size=N)
    if complex_coeffs:
        d = d + 1j * rng.normal(size=N)
    return DirichletPolynomial(d, sigma)


def test_lift_reproduces_line_values(small_sieve):
    rng = np.random.default_rng(5)
    P = random_poly(rng, 40, 0.25, complex_coeffs=True)
    Q = lift(P, small_sieve)
    assert Q.dimension == 12
    for t in rng.uniform(-200, 200, 10):
        assert torus_eval(Q, torus_point(Q, t)) == pytest.approx(P(t), rel=1e-10, abs=1e-10)


def test_lift_drops_zero_terms(small_sieve):
    d = np.zeros(20)
    d[[0, 5, 16]] = [1.0, 2.0, -1.0]
    Q = lift(DirichletPolynomial(d), small_sieve)
    assert Q.indices.tolist() == [1, 6, 17]
    assert Q.omega().tolist() == [0, 2, 1]


@pytest.mark.parametrize("seed", range(6))
def test_estimate_dominates_line_grid_and_bohr_bound(seed, small_sieve):
    rng = np.random.default_rng(100 + seed)
    N = int(rng.integers(5, 80))
    P = random_poly(rng, N, float(rng.uniform(0, 0.5)), complex_coeffs=bool(seed % 2))
    est = sup_estimate(lift(P, small_sieve), restarts=8, iterations=6, seed=seed)
    t = np.linspace(-300, 300, 20001)
    line = float(np.max(np.abs(P(t))))
    assert line <= est.lower_bound * (1 + 1e-9)
    assert bohr_lower_bound(P, small_sieve) <= est.lower_bound * (1 + 1e-12)
    assert est.lower_bound <= est.upper_envelope * (1 + 1e-12)
    Q = lift(P, small_sieve)
    assert abs(torus_eval(Q, est.witness)) == pytest.approx(est.lower_bound, rel=1e-12)


def test_seeded_estimate_is_reproducible(small_sieve):
    P = DirichletPolynomial(rudin_shapiro_coefficients(100).astype(float))
    Q = lift(P, small_sieve)
    a = sup_estimate(Q, restarts=6, iterations=3, seed=9)
    b = sup_estimate(Q, restarts=6, iterations=3, seed=9)
    assert a.lower_bound == b.lower_bound and np.array_equal(a.witness, b.witness)


def test_unit_coefficients_reach_N(small_sieve):
    est = sup_estimate(lift(DirichletPolynomial.unit(50), small_sieve), restarts=2, iterations=2)
    assert est.lower_bound == pytest.approx(50.0)


def test_prime_support_reaches_l1_norm(small_sieve):
    rng = np.random.default_rng(8)
    d = np.zeros(30, dtype=complex)
    primes = small_sieve.primes[small_sieve.primes <= 30]
    d[primes - 1] = rng.normal(size=primes.size) * np.exp(2j * np.pi * rng.random(primes.size))
    est = sup_estimate(lift(DirichletPolynomial(d), small_sieve), restarts=4, iterations=4)
    assert est.lower_bound == pytest.approx(kronecker_sup(d), rel=1e-9)


def test_queffelec_constants():
    assert queffelec_constant(1) == pytest.approx(1.0)
    c2 = (2 / math.sqrt(math.pi)) * 2 * 3**1.5 / (4 * 2 ** (2 / 3))
    assert queffelec_constant(2) == pytest.approx(c2, rel=1e-14)
    assert queffelec_constant(2) <= 2.0
    # the closed form outgrows m^{m/2} from m = 3 on
    for m in range(3, 11):
        assert queffelec_constant(m) > m ** (m / 2)


def test_queffelec_m1_is_bohr_bound(small_sieve):
    rng = np.random.default_rng(2)
    P = random_poly(rng, 60, 0.3)
    c, norm = queffelec_lower_bound(P, small_sieve, 1)
    assert c == pytest.approx(1.0)
    assert norm == pytest.approx(bohr_lower_bound(P, small_sieve), rel=1e-13)


def test_queffelec_bounds_hold(small_sieve):
    rng = np.random.default_rng(4)
    for _ in range(5):
        P = random_poly(rng, 64, 0.0)
        est = sup_estimate(lift(P, small_sieve), restarts=4, iterations=4)
        for m in (1, 2, 3):
            c, norm = queffelec_lower_bound(P, small_sieve, m)
            assert norm / c <= est.lower_bound * (1 + 1e-9)


def test_lift_requires_log_frequencies(small_sieve):
    with pytest.raises(ValueError):
        lift(DirichletPolynomial([1.0, 1.0], 0.0, [0.0, 1.0]), small_sieve)
