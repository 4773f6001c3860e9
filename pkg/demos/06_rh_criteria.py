# %% [markdown]
# # Arithmetic criteria equivalent to RH
#
# Robin: sigma(n)/n < e^gamma log log n for every n > 5040. Lagarias:
# sigma(n) <= H_n + exp(H_n) log H_n for every n. Both are scanned over a
# sieve range; near ties are decided again in 40-digit decimals.

# %%
from dirlab import build_sieve, colossally_abundant, robin_scan
from dirlab.criteria import ca_extrema_profile, grytczuk_scan, lagarias_scan

s = build_sieve(10**6)
small = robin_scan(s, 3, 5040)
print("Robin violators up to 5040:", small.violations)
big = robin_scan(s, 5041, 10**6)
print("Robin on [5041, 10^6]:", big.violations, "closest approach", big.min_margin, "at n =", big.argmin)
print("Lagarias on [1, 10^6]:", lagarias_scan(s, 1, 10**6).violations)
print("Grytczuk on odd n up to 5*10^5:", grytczuk_scan(s, 9843, 5 * 10**5).violations)

# %% [markdown]
# Colossally abundant numbers maximize sigma(n)/n^{1+eps}; they are the
# extreme test points for Robin's inequality.

# %%
seq = colossally_abundant(16, verify_bound=10**6, sieve=s)
for x, (lo, hi) in zip(seq.numbers, seq.intervals):
    print(f"{x.value:>22}  = {str(x):<32} eps in ({lo:.5f}, {hi:.5f})")

# %%
for x, ratio, extremum in ca_extrema_profile(seq):
    print(f"{x.value:>22}  sigma/(x loglog x) = {ratio:.5f}{'  local extremum' if extremum else ''}")
