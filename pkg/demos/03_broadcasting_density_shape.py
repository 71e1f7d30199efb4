# %% [markdown]
# # Leaders, density and world shape
# Averages over 100 seeds each.  Convergence time is the first iteration at
# which mean fitness reaches 95% of the optimum.

# %%
import numpy as np

from evoc.experiment import preset, run_replicates
from evoc.metrics import convergence_iteration


def summary(name, **kw):
    logs = run_replicates(preset(name, iterations=200, **kw))
    t95 = np.mean([convergence_iteration(l, 0.95) for l in logs])
    peak = np.mean([max(l.diversity) for l in logs])
    final = np.mean([l.diversity[-1] for l in logs])
    fit20 = np.mean([l.mean_fitness[20] for l in logs])
    print(f"{name:22s} t95 {t95:6.2f}  peak div {peak:6.2f}  final div {final:5.2f}  fitness@20 {fit20:.3f}")


# %%
for name in ("broadcast_0", "broadcast_1", "broadcast_5"):
    summary(name)

# %% [markdown]
# Sparse worlds leave isolated agents that must invent everything themselves.

# %%
for name in ("density_100", "density_050", "density_030", "density_030_broadcast"):
    summary(name)

# %%
for name in ("shape_toroidal", "shape_square"):
    summary(name)
