# %% [markdown]
# # Mean values of Dirichlet polynomials
#
# The mean of |P|^{2k} over a long interval tends to the diagonal sum of the
# coefficients of P^k. The quadrature is band-limited Gauss-Legendre, so the
# error estimate is tight.

# %%
import math

import numpy as np

from dirlab import DirichletPolynomial, mean_value_integral, mv_limit_formula
from dirlab.meanvalues import check_suite, linear_spacing_coefficient, mean_value_report

for k, N in ((1, 3), (2, 4), (3, 3)):
    P = DirichletPolynomial.unit(N, 0.5)
    value, err = mean_value_integral(P, k, (-1e4, 1e4))
    print(f"k = {k}, N = {N}: mean {value:.5f} (+- {err:.1e})  diagonal {mv_limit_formula(k, N, 0.5):.5f}")

# %%
# the report carries the explicit error bound from the mean-value inequality
rep = mean_value_report(DirichletPolynomial.unit(5, 0.5), 1, 100.0)
print(rep.to_dict())

# %% [markdown]
# Higher moments need the coefficient of linear spacing xi: the least nonzero
# gap among order-q integer combinations of the frequencies.

# %%
lam = [math.log(p) for p in (2, 3, 5, 7)]
for q in (1, 2, 3):
    sp = linear_spacing_coefficient(lam, q)
    print(f"q = {q}: |E_q| = {sp.enumerated_tuples:3d}  xi = {sp.xi:.6f}  witness {sp.witness}")
sp = linear_spacing_coefficient([math.log(2), math.log(4), math.log(8)], 2)
print("log 2, log 4, log 8 at q = 2 degenerate:", sp.degenerate)

# %%
# randomized suites for each explicit-constant inequality
for which in ("prop2", "prop3", "majorization", "ingham", "sqfn"):
    out = check_suite(which, 50, seed=1)
    print(f"{which:>12}: {out['failCount']} failures, worst margin {out['worstMargin']:.3e}")
