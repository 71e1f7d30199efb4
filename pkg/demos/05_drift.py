# %% [markdown]
# # Drift between equally fit variants
# Under the tool-making need the head may move up or down; both score the
# same.  Which variant a small population settles on is down to chance.

# %%
import numpy as np

from evoc.actionspace import DIGITS, HEAD
from evoc.experiment import preset, run_replicates
from evoc.fitness import NeedConfig, optimal_ids
from evoc.metrics import drift_frequencies

opt = optimal_ids(NeedConfig("f2"))
head_up = [i for i in opt if DIGITS[i][HEAD] == 1]
head_down = [i for i in opt if DIGITS[i][HEAD] == 2]

logs = run_replicates(preset("drift_5x5", iterations=60), record_actions=True)
final = np.array([drift_frequencies(l, [head_up, head_down])[-1] for l in logs])
frac_up = final[:, 0] / final.sum(axis=1)

# %%
print(f"runs: {len(frac_up)}, sd of head-up share {frac_up.std(ddof=1):.3f}")
print(f"fixed head-up: {(frac_up == 1).sum()}, fixed head-down: {(frac_up == 0).sum()}")
hist, edges = np.histogram(frac_up, bins=10, range=(0, 1))
for h, e in zip(hist, edges):
    print(f"{e:.1f}-{e + 0.1:.1f} {'#' * h}")
