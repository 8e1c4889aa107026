# %% [markdown]
# # Two constructed families
#
# `section4_family(k)` is a cycle on 2k+1 vertices with chords arranged so
# that label 1 is the only degree-2 vertex. Its principal eigenvector is
# smallest at label 1 and largest at labels k+1 and k+2, which are exactly
# diameter-far from label 1. Labels below are 1-based, as in the
# construction; `F.index` converts.

# %%
import math

from spectral_lab import families as F
from spectral_lab.graph import bfs_distances
from spectral_lab.spectral import principal_pair

# %%
k = 3
g = F.section4_family(k)
x = principal_pair(g).eigvec
dist = bfs_distances(g, F.index(1))
for v in range(g.n):
    flag = "  >= 1/sqrt(7)" if x[v] >= 1 / math.sqrt(7) else ""
    print(f"label {F.label(v)}  d(1,.)={dist[v]}  x={x[v]:.6f}{flag}")

# %% [markdown]
# Cycle plus one chord at distance 2: lambda1 settles quickly on a limit
# near 2.3829.

# %%
for n in (10, 20, 50, 100, 200):
    print(n, repr(principal_pair(F.cycle_plus_chord(n)).midpoint))

# %% [markdown]
# Family spec strings drive the CLI and the harness; ranges expand.

# %%
print([str(s) for s in F.parse_family_specs("circulant(8..10,1,3)")])
print(F.build("regular_minus_edge(petersen(),4)").m)
