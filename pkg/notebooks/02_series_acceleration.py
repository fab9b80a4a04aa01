# %% [markdown]
# # Accelerating the Hermite series
#
# The spectral series for `P(z, x)` has positive terms decaying like
# `n^{-3/2}`, so raw partial sums converge slowly.  Two fixes are available:
# an analytic estimate of the tail from the large-n envelope of `psi_n^2`,
# and averaging of neighbouring partial sums followed by extrapolation.

# %%
import mpmath as mp

import pcfprod as pp
from pcfprod.config import SeriesSpec

mp.mp.dps = 30
z, x = 1.0, 1.0
exact = float(mp.gamma(z) * mp.pcfd(-z, x) * mp.pcfd(-z, -x))

# %%
print(f"{'terms':>7} {'strategy':>22} {'abs error':>10} {'estimate':>10}")
for n in (2_000, 20_000, 200_000):
    for mode in ("none", "semiclassical_tail", "averaging_acceleration", "both"):
        r = pp.product_via_hermite_series(z, x, SeriesSpec(max_terms=n, tail_strategy=mode))
        print(f"{n:>7} {mode:>22} {abs(r.real - exact):10.2e} {r.tail_estimate:10.2e}")

# %% [markdown]
# The alternating series for `Q` carries an oscillating remainder.  Averaging
# alone does little here, since the error is dominated by the slowly varying
# part of the tail; combined with the tail estimate it gains six digits.

# %%
exact_q = float(mp.gamma(z) * mp.pcfd(-z, x) ** 2)
for mode in ("none", "averaging_acceleration", "both"):
    r = pp.square_via_alternating_series(z, x, SeriesSpec(max_terms=20_000, tail_strategy=mode))
    print(f"{mode:>22} {abs(r.real - exact_q):10.2e} {r.tail_estimate:10.2e}")
