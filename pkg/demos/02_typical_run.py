# %% [markdown]
# # A typical run
# 100 agents on a 10x10 torus, tool-making need, 1:1 invention to imitation.
# Mean fitness climbs; diversity rises and then collapses onto a few optima.

# %%
import sys

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt

from evoc.experiment import preset, run_replicates
from evoc.metrics import aggregate

out = sys.argv[1] if len(sys.argv) > 1 else "typical_run.png"

# %%
curves = {}
for name in ("f2_baseline", "f1_baseline", "two_needs"):
    agg = aggregate(run_replicates(preset(name, iterations=40)))
    curves[name] = agg
    print(f"{name:12s} peak diversity {agg.diversity_mean.max():5.1f} at t={agg.diversity_mean.argmax():2d}, "
          f"final {agg.diversity_mean[-1]:.1f}, fitness at t=10 {agg.mean_fitness_mean[10]:.2f}")

# %%
fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(10, 4))
for name, agg in curves.items():
    ax1.errorbar(agg.iteration, agg.mean_fitness_mean, yerr=agg.mean_fitness_se, label=name)
    ax2.plot(agg.iteration, agg.diversity_mean, label=name)
ax1.set(xlabel="iteration", ylabel="mean fitness")
ax2.set(xlabel="iteration", ylabel="distinct actions")
ax2.legend()
fig.tight_layout()
fig.savefig(out, dpi=100)
print("saved", out)
