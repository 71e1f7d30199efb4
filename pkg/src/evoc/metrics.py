"""Per-iteration and cross-replicate statistics."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .errors import ConfigError

__all__ = [
    "MetricsFrame", "AggregateSeries", "mean_fitness", "diversity", "snapshot_grid",
    "convergence_iteration", "drift_frequencies", "aggregate", "peak_to_decay",
    "area_under", "EMPTY",
]

EMPTY = -1


@dataclass(frozen=True)
class MetricsFrame:
    iteration: int
    mean_fitness: float
    diversity: int
    grid: Optional[list] = None       # rows x cols ActionIds, EMPTY where no agent
    actions: Optional[tuple] = None   # ActionId per agent, when recorded


def mean_fitness(state) -> float:
    if not state.agents:
        raise ConfigError("population: empty")
    return sum(a.best_fitness for a in state.agents) / len(state.agents)


def diversity(state) -> int:
    """Number of distinct implemented actions."""
    return len({a.action_id for a in state.agents})


def snapshot_grid(state) -> list[list[int]]:
    cfg = state.world.cfg
    grid = [[EMPTY] * cfg.cols for _ in range(cfg.rows)]
    for a in state.agents:
        r, c = a.position
        grid[r][c] = a.action_id
    return grid


def grid_diversity(grid) -> int:
    return len({v for row in grid for v in row if v != EMPTY})


def convergence_iteration(log, fraction: float = 0.95, optimum: Optional[float] = None):
    """First iteration whose mean fitness reaches ``fraction`` of the optimum, or None."""
    if not 0.0 < fraction <= 1.0:
        raise ConfigError(f"fraction: must be in (0, 1], got {fraction!r}")
    best = log.optimum if optimum is None else optimum
    target = fraction * best
    for f in log.frames:
        if f.mean_fitness >= target:
            return f.iteration
    return None


def drift_frequencies(log, partition: Sequence[Sequence[int]]) -> np.ndarray:
    """Fraction of agents implementing an action in each partition cell.

    Returns an ``(n_frames, n_cells)`` array.  Needs a log run with
    ``record_actions=True``.
    """
    cells = [frozenset(c) for c in partition]
    union = set()
    for c in cells:
        if union & c:
            raise ConfigError("partition: cells overlap")
        union |= c
    if any(f.actions is None for f in log.frames):
        raise ConfigError("log: per-agent actions were not recorded")
    out = np.zeros((len(log.frames), len(cells)))
    for t, f in enumerate(log.frames):
        n = len(f.actions)
        for k, c in enumerate(cells):
            out[t, k] = sum(1 for a in f.actions if a in c) / n
    return out


@dataclass(frozen=True)
class AggregateSeries:
    iteration: np.ndarray
    mean_fitness_mean: np.ndarray
    mean_fitness_se: np.ndarray
    diversity_mean: np.ndarray
    diversity_se: np.ndarray
    replicates: int


def _mean_se(x: np.ndarray):
    n = x.shape[0]
    if n < 2:
        return x.mean(axis=0), np.zeros(x.shape[1])
    return x.mean(axis=0), x.std(axis=0, ddof=1) / np.sqrt(n)


def aggregate(logs) -> AggregateSeries:
    """Mean and standard error across replicates, iteration by iteration."""
    if not logs:
        raise ConfigError("logs: nothing to aggregate")
    lengths = {len(log.frames) for log in logs}
    if len(lengths) != 1:
        raise ConfigError(f"logs: replicate lengths differ {sorted(lengths)}")
    fit = np.array([[f.mean_fitness for f in log.frames] for log in logs], dtype=float)
    div = np.array([[f.diversity for f in log.frames] for log in logs], dtype=float)
    fm, fs = _mean_se(fit)
    dm, ds = _mean_se(div)
    its = np.array([f.iteration for f in logs[0].frames])
    return AggregateSeries(its, fm, fs, dm, ds, len(logs))


def peak_to_decay(series: Sequence[float], fraction: float = 0.95) -> int:
    """Iterations from the (first) peak until ``fraction`` of the fall to the final value is done.

    Zero when the series never falls after its peak.
    """
    x = np.asarray(series, dtype=float)
    peak = int(np.argmax(x))
    drop = x[peak] - x[-1]
    if drop <= 0:
        return 0
    level = x[peak] - fraction * drop
    after = np.nonzero(x[peak:] <= level + 1e-12)[0]
    return int(after[0])


def area_under(series: Sequence[float]) -> float:
    """Sum over iterations (unit spacing)."""
    return float(np.sum(series))
