# %% [markdown]
# # Eroding border on a 7x7 torus
# A border between columns 3 and 4 (and across the wrap seam) is closed for
# the first four iterations and then opens linearly.  Agents right of the
# border invent twice as often as they imitate.

# %%
import tempfile
from pathlib import Path

from evoc.experiment import preset, run_experiment

m = preset("fig8")
out = run_experiment(m, Path(tempfile.mkdtemp()) / "fig8")

for t in (4, 20, 40):
    print(f"iteration {t}")
    print((out / "snapshots" / f"run_000_t{t:05d}.txt").read_text())

# %% [markdown]
# Final diversity with no border, a permanent border and an eroding border.

# %%
import numpy as np

from evoc.experiment import run_replicates

for name in ("border_none", "border_permanent", "border_eroding"):
    logs = run_replicates(preset(name, iterations=200))
    print(f"{name:17s} final distinct actions {np.mean([l.diversity[-1] for l in logs]):.2f}")
