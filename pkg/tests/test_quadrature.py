import math

import numpy as np
import pytest

from dirlab.exceptions import BudgetExceededError
from dirlab.quadrature import integrate, mean, panels_for


def test_polynomial_exact():
    q = integrate(lambda t: t**5 - 3 * t**2, -1.0, 2.0, 0.0)
    assert q.value == pytest.approx(2**6 / 6 - 1 / 6 - (8 + 1), abs=1e-13)


@pytest.mark.parametrize("w", [1.0, 37.5, 400.0])
def test_oscillatory_cosine(w):
    q = integrate(lambda t: np.cos(w * t) ** 2, 0.0, 10.0, 2 * w)
    want = 5.0 + math.sin(20 * w) / (4 * w)
    assert q.value == pytest.approx(want, abs=1e-11)
    assert q.error < 1e-9


def test_panel_width_rule():
    n = panels_for(0.0, 100.0, 10.0)
    assert 100.0 / n <= math.pi / 40 + 1e-15
    assert panels_for(0.0, 1.0, 0.0) == 64


def test_mean_and_budget():
    q = mean(lambda t: np.ones_like(t), -3.0, 3.0, 0.0)
    assert q.value == pytest.approx(1.0)
    with pytest.raises(BudgetExceededError) as exc:
        integrate(lambda t: np.sign(np.sin(t)), 0.0, 1000.0, 1.0, tol=1e-14, max_panels=2**10)
    assert exc.value.best_estimate is not None
    with pytest.raises(ValueError):
        integrate(np.cos, 1.0, 1.0, 1.0)
