# %% [markdown]
# # Searching for small c
#
# c = (Delta - lambda1) n D is always above 1 for connected irregular graphs.
# How small can it get? The explorer hill-climbs over single-edge moves with
# periodic restarts and keeps the best certified c it sees.

# %%
import math

from spectral_lab import families as F
from spectral_lab import harness as H

# %% [markdown]
# With Delta = 2 the only connected irregular graphs are paths, so the search
# has to land on P_11.

# %%
state = H.run_explorer(11, 2, 200, seed=3)
print(state.best_c, "vs", 110 * (2 - 2 * math.cos(math.pi / 12)))

# %%
state = H.run_explorer(7, 3, 150, seed=1, candidates=[F.section4_family(3)])
print("best c", state.best_c, "edges", list(state.best.edges()))
print("\n".join(state.moves[:8]))
