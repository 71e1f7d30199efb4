# %% [markdown]
# # Fitness landscapes
# The two needs score the 729 actions very differently.  Tool making (F2)
# has 54 optima and is additive over body parts; mate attraction (F1) has
# only 16 optima and rewards arm and leg pairs moving together.

# %%
import numpy as np

from evoc import NeedConfig, enumerate_all, fitness_f1, fitness_f2
from evoc.fitness import optimal_ids

actions = enumerate_all()
f1 = np.array([fitness_f1(a) for a in actions])
f2 = np.array([fitness_f2(a) for a in actions])

for label, f in [("F1", f1), ("F2", f2), ("F1+2", 0.5 * (f1 + f2))]:
    print(f"{label:5s} max {f.max():4.1f}  optima {np.sum(f == f.max()):3d}  mean {f.mean():.3f}")

# %% [markdown]
# Histogram of fitness values: F1 is spread over many levels, F2 has five.

# %%
for label, f in [("F1", f1), ("F2", f2)]:
    values, counts = np.unique(f, return_counts=True)
    print(label, dict(zip(values.tolist(), counts.tolist())))

# %% [markdown]
# Epistasis: fit a model with one weight per (part, state) and look at what it cannot explain.

# %%
X = np.zeros((729, 18))
for i, a in enumerate(actions):
    for k, p in enumerate(a):
        X[i, 3 * k + int(p)] = 1
for label, f in [("F1", f1), ("F2", f2)]:
    coef, *_ = np.linalg.lstsq(X, f, rcond=None)
    print(f"{label} largest residual from an additive model: {np.abs(X @ coef - f).max():.3f}")

print("joint optima:", [actions[i] for i in optimal_ids(NeedConfig("both"))][:2], "...")
