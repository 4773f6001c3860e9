# %% [markdown]
# # Suprema through the Bohr lift
#
# Writing n = prod p_j^{a_j} turns sum d(n) n^{-it} into a polynomial on the
# torus of dimension pi(N). By Kronecker's theorem its sup over the torus is
# the sup over the line, and the torus is far easier to search.

# %%
import math

import numpy as np

from dirlab import DirichletPolynomial, bohr_lower_bound, build_sieve, lift, sup_estimate, torus_eval
from dirlab.bohr import queffelec_lower_bound, torus_point
from dirlab.dirichlet import rudin_shapiro_coefficients, trig_sup

s = build_sieve(10**4)
P = DirichletPolynomial(rudin_shapiro_coefficients(200).astype(float), 0.0)
Q = lift(P, s)
t = 12.3
print("line value", P(t), "torus value", torus_eval(Q, torus_point(Q, t)))

# %%
est = sup_estimate(Q, restarts=8, iterations=6, seed=0)
grid = np.linspace(-500, 500, 200001)
print(f"best on a line grid   {np.abs(P(grid)).max():8.3f}")
print(f"torus ascent          {est.lower_bound:8.3f}  (certified: attained at the witness)")
print(f"Bohr bound sum_p |d|  {bohr_lower_bound(P, s):8.3f}")
print(f"l1 envelope           {est.upper_envelope:8.3f}")
for m in (1, 2, 3):
    c, norm = queffelec_lower_bound(P, s, m)
    print(f"Queffelec m = {m}: {norm / c:8.3f}")

# %% [markdown]
# With frequencies p^{-it} only, the lifted coordinates are independent and
# the supremum is the l1 norm of the coefficients.

# %%
rng = np.random.default_rng(3)
d = np.zeros(30, dtype=complex)
ps = s.primes[s.primes <= 30]
d[ps - 1] = rng.normal(size=ps.size) * np.exp(2j * math.pi * rng.random(ps.size))
est = sup_estimate(lift(DirichletPolynomial(d), s), restarts=16)
print("prime-supported:", est.lower_bound, "vs l1", np.abs(d).sum())

# %%
# Rudin-Shapiro signs keep the trigonometric sup near sqrt(N)
for k in (4, 8, 12):
    N = 2**k
    sup, _ = trig_sup(rudin_shapiro_coefficients(N))
    print(f"N = {N:>5}: sup / sqrt(N+1) = {sup / math.sqrt(N + 1):.3f} <= {2 + math.sqrt(2):.3f}")
