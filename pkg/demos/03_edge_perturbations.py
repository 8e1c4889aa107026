# %% [markdown]
# # Deleting and adding one edge
#
# Removing an edge from a connected Delta-regular graph (keeping it connected)
# leaves a gap squeezed between 1/(nD') and 2/n. Adding an edge to a
# k-regular graph pushes lambda1 up by an amount between
# 2/n (1 + 1/(2(k+1))) and 2/n (1 + 1/(k - lambda2 - 1)), the latter only
# when k - lambda2 > 1.

# %%
from spectral_lab import families as F
from spectral_lab import harness as H
from spectral_lab.bounds import edge_deletion_report, maas_solve_delta, verify_edge_addition

# %%
r = edge_deletion_report(F.petersen(), (0, 1))
print(f"Petersen - e: D'={r.diameter}  {r.bound_main:.4f} < gap in [{r.gap_lo:.6f}, {r.gap_hi:.6f}] < {r.upper_bound}")

# %%
h = F.petersen()
for e in list(h.non_edges())[:5]:
    a = verify_edge_addition(h, e)
    print(e, f"{a.lower:.3f} < shift {a.observed_lo:.6f} < {a.upper:.3f}", a.verdict, "maas", a.verdict_maas)

# %% [markdown]
# Cycles sit in the regime where k - lambda2 < 1, so only the lower bound
# applies.

# %%
a = verify_edge_addition(F.cycle(12), (0, 2))
print(a.upper_applicable, a.notes, a.verdict)

# %% [markdown]
# The regular-case Maas bound: delta solves a cubic-over-quadratic equation,
# which bisection handles directly.

# %%
sol = maas_solve_delta(2.0, 10 ** -0.5, 10 ** -0.5, 10)
print(sol)

# %%
rows = H.run_edge_experiments(H.CampaignConfig(families=["complete_bipartite(4,4)"]), mode="add", max_edges=2)
print(H.format_report(rows, H.EDGE_FIELDS))
