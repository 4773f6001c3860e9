# %% [markdown]
# # Sieve and divisor functions
#
# One smallest-prime-factor table answers every arithmetic question the other
# modules ask: factorizations, sigma(n), d_k(n), Omega, omega and P+(n).

# %%
import numpy as np

from dirlab import build_sieve, factorize, restricted_divisor_count
from dirlab.sieve import restricted_divisor_table

s = build_sieve(10**6)
print(s, "pi(10^6) =", s.prime_count(10**6))

# %%
# factorizations come from repeated spf lookups
for n in (360, 5040, 999983, 720720):
    f = factorize(s, n)
    print(f"{n:>7} = {f}   sigma(n)/n = {f.sigma_ratio():.4f}")

# %% [markdown]
# Whole-range tables are built one distinct prime per pass, so they are
# vectorized and exact in int64.

# %%
sig = s.sigma_table(100)
d3 = s.divisor_count_table(3, 100)
big, small, largest = s.omega_tables(100)
print("n  sigma d3 Omega omega P+")
for n in (1, 12, 30, 64, 97, 100):
    print(n, sig[n], d3[n], big[n], small[n], largest[n])

# %% [markdown]
# d_{k,N}(m) counts ordered k-tuples of integers up to N with product m.
# It is what remains of d_k once the factors are capped, and it gives the
# coefficients of the k-th power of a unit Dirichlet polynomial.

# %%
table = restricted_divisor_table(2, 4)
print("d_{2,4}(m), m = 1..16:", table[1:].tolist())
print("d_{2,4}(12) =", restricted_divisor_count(s, 12, 2, 4), "vs d_2(12) =", s.divisor_count_table(2, 12)[12])
print("sum over m equals N^k:", int(table.sum()) == 16)

# %%
# the mean of d(m)^2/m grows like a power of log N
from dirlab.meanvalues import divisor_moment_ratio

for N, total, ratio in divisor_moment_ratio(2, [10**3, 10**4, 10**5, 10**6], s):
    print(f"N = {N:>8}  sum d(m)^2/m = {total:9.2f}  / (log N)^4 = {ratio:.4f}")
print("the last column is still falling: lower-order log terms dominate at this scale")
