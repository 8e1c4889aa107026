# %% [markdown]
# # Certified spectral radius
#
# `principal_pair` runs power iteration on A + I from the all-ones vector and
# returns an interval that provably contains the largest adjacency eigenvalue.
# The interval comes from the Rayleigh quotient and the residual norm, with a
# small outward allowance for rounding.

# %%
import math

import numpy as np

from spectral_lab import families as F
from spectral_lab.spectral import dense_spectrum_oracle, lambda2, principal_pair

# %%
g = F.path(10)
est = principal_pair(g)
exact = 2 * math.cos(math.pi / 11)
print(f"enclosure  [{est.lambda1_lo!r}, {est.lambda1_hi!r}]")
print(f"closed form {exact!r}  inside: {est.lambda1_lo <= exact <= est.lambda1_hi}")
print(f"width {est.width:.2e} after {est.iterations} power steps")

# %% [markdown]
# The eigenvector is positive (Perron) and normalised. For a star the centre
# carries weight 1/sqrt(2) no matter how many leaves there are.

# %%
for t in (3, 8, 30):
    x = principal_pair(F.star(t + 1)).eigvec
    print(t, np.round(x[:3], 6), "centre", round(float(x[0]), 12))

# %% [markdown]
# A second, independent route: Householder tridiagonalisation plus Sturm
# bisection gives the whole spectrum for n <= 512.

# %%
spec = dense_spectrum_oracle(F.petersen())
print("Petersen spectrum", np.round(spec, 10))
print("lambda2", lambda2(F.petersen()))

# %%
g = F.random_connected(200, 150, seed=5)
est = principal_pair(g)
print("iterative midpoint", est.midpoint, " oracle", dense_spectrum_oracle(g)[0])
