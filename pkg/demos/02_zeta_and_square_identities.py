# %% [markdown]
# # Zeta approximation and the square identities
#
# The truncated sum with the x^{1-s}/(1-s) correction approximates zeta(s)
# with error of order x^{-sigma} as long as |t| stays below 2 pi x / C.

# %%
import math

import numpy as np

from dirlab import square_identity_f1, square_identity_f3, zeta_approx, zeta_reference
from dirlab.dirichlet import ZETA_ERROR_K

for x in (10, 100, 1000):
    s = complex(0.5, 0.9 * 2 * math.pi * x / 4)
    err = abs(zeta_approx(s, x) - zeta_reference(s))
    print(f"x = {x:>5}  t = {s.imag:8.2f}  error = {err:.2e}  budget K x^-sigma = {ZETA_ERROR_K * x ** -0.5:.2e}")

print("zeta(2) from x = 1000:", zeta_approx(2, 1000).real, "pi^2/6 =", math.pi**2 / 6)

# %%
# the reference evaluator reproduces the first zero
print("|zeta(1/2 + 14.1347i)| =", abs(zeta_reference(0.5 + 14.134725141734693j)))

# %% [markdown]
# On the critical line the squared modulus of the approximant splits exactly
# into per-k rows, and the difference identity is the sum of rows m < k <= n.

# %%
rng = np.random.default_rng(0)
t = rng.uniform(-100, 100, 5)
lhs, rhs = square_identity_f1(50, t)
print("f1, n = 50:", np.max(np.abs(lhs - rhs) / (1 + np.abs(lhs))))
lhs, rhs = square_identity_f3(10, 50, t)
print("f3, m = 10, n = 50:", np.max(np.abs(lhs - rhs) / (1 + np.abs(lhs))))
