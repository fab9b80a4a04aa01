# %% [markdown]
# # Four ways to the same number
#
# `P(z, x) = Gamma(z) D_{-z}(x) D_{-z}(-x)` can be reached from a direct
# evaluation of the parabolic cylinder function, from two integrals over the
# half line or a finite interval, and from a Hermite-function series.  This
# script walks through them at a single point, then over a small grid.

# %%
import numpy as np

import pcfprod as pp
from pcfprod.integrals import beta_closed_form, erfc_closed_form_one

z, x = 1.0, 1.0
direct = pp.gamma(z) * pp.pcf_D(-z, x).value * pp.pcf_D(-z, -x).value
tanh = pp.product_via_tanh_integral(z, x)
finite = pp.product_via_finite_integral(z, x)
series = pp.product_via_hermite_series(z, x)

print(f"direct          {direct.real:.15f}")
print(f"tanh integral   {tanh.real:.15f}  err~{tanh.err_estimate:.1e}  work {tanh.work}")
print(f"finite integral {finite.real:.15f}  err~{finite.err_estimate:.1e}  work {finite.work}")
print(f"Hermite series  {series.real:.15f}  tail~{series.tail_estimate:.1e}  terms {series.terms_used}")

# %% [markdown]
# At `z = 1` everything collapses to complementary error functions, which
# gives a cheap independent reference.

# %%
for x in np.linspace(-3, 3, 7):
    q = pp.product_via_tanh_integral(1.0, x).real
    c = erfc_closed_form_one(x)
    print(f"x={x:+.1f}  quadrature {q:.14f}  closed {c:.14f}  rel {abs(q - c) / c:.1e}")

# %% [markdown]
# On the line `x = 0` the product is a Beta-function ratio.

# %%
for z in (0.25, 0.5, 1.0, 2.5, 5.0, 1 + 2j):
    q = pp.product_via_tanh_integral(z, 0.0).value
    b = beta_closed_form(z)
    print(f"z={complex(z)!s:>8}  rel dev {abs(q - b) / abs(b):.1e}")

# %% [markdown]
# The decaying square `Q(z, x)` has its own pair of integrals; the sum and
# difference with `P` have simpler kernels still.

# %%
z, x = 2.5, 1.5
p = pp.product_via_tanh_integral(z, x).value
q = pp.square_via_coth_integral(z, x).value
q2 = pp.square_via_shifted_integral(z, x).value
plus = pp.combination_integrals(z, x, "+").value
minus = pp.combination_integrals(z, x, "-").value
print(f"Q coth    {q.real:.15f}")
print(f"Q shifted {q2.real:.15f}")
print(f"Q+P {(q + p).real:.15f} vs {plus.real:.15f}")
print(f"Q-P {(q - p).real:.15f} vs {minus.real:.15f}")
