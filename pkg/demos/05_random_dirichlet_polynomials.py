# %% [markdown]
# # Random Dirichlet polynomials
#
# With Rademacher signs eps_n the expected supremum of sum eps_n d(n) n^{-s}
# is of order N^{1-sigma}/log N for d = 1. The constants are not accessible
# at this scale, but the normalized ratio is stable across N.

# %%
import math

from dirlab import build_sieve, coefficient_profile, halasz_ratio_study, sample_signs
from dirlab.random_dirichlet import theorem_lb_bound, theorem_t2_bound

s = build_sieve(10**4)
print("signs:", sample_signs(12, seed=0).signs.tolist())

# %%
for rule in ("unit", "coprime:6", "lambda:1.2", "smooth:3"):
    p = coefficient_profile(rule, s, 1000)
    print(f"{rule:>10}: {p.summary()}")

# %%
unit = coefficient_profile("unit", s, 4096)
for N in (64, 512, 4096):
    b = theorem_t2_bound(unit, N, 0.0)
    print(f"N = {N:>4}: cell bound {theorem_lb_bound(unit, s, N, 0.0):8.2f}  regime {b.regime}  D2~ B = {b.value:8.2f}")

# %%
study = halasz_ratio_study("unit", [32, 64, 128, 256], 0.0, trials=8, sieve=s, restarts=4, iterations=3, seed=0)
for row in study.rows:
    print(f"N = {row['N']:>4}: mean sup {row['meanSup']:7.2f} +- {row['stdErr']:.2f}  ratio {row['ratio']:.3f}")
print("max/min ratio across N:", round(study.ratio_spread, 3))
