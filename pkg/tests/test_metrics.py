import random
from dataclasses import dataclass

import numpy as np
import pytest

from evoc.actionspace import DIGITS, HEAD
from evoc.engine import RunLog, SimConfig, init, run
from evoc.errors import ConfigError
from evoc.fitness import NeedConfig, optimal_ids
from evoc.metrics import (
    MetricsFrame, aggregate, area_under, convergence_iteration, diversity, drift_frequencies,
    grid_diversity, mean_fitness, peak_to_decay, snapshot_grid,
)
from evoc.world import WorldConfig

F2 = NeedConfig("f2")


def fake_log(fits, divs=None, actions=None, optimum=10.0):
    divs = divs or [1] * len(fits)
    frames = [MetricsFrame(t, f, d, actions=None if actions is None else tuple(actions[t]))
              for t, (f, d) in enumerate(zip(fits, divs))]
    return RunLog(frames, None, optimum)


def test_mean_fitness_and_diversity():
    s = init(SimConfig(need=F2), WorldConfig(1, 2))
    assert mean_fitness(s) == 0 and diversity(s) == 1
    s.agents[1].action_id, s.agents[1].best_fitness = optimal_ids(F2)[0], 10.0
    assert mean_fitness(s) == 5 and diversity(s) == 2
    for a in s.agents:
        a.best_fitness = 10.0
    assert mean_fitness(s) == 10


def test_diversity_all_distinct():
    s = init(SimConfig(), WorldConfig())
    for i, a in enumerate(s.agents):
        a.action_id = i * 7
    assert diversity(s) == 100


def test_grid_and_state_diversity_agree():
    for seed in range(5):
        log = run(SimConfig(need=NeedConfig("f1"), iterations=30, seed=seed),
                  WorldConfig(density=0.7), snapshot_every=1)
        for f in log.frames:
            assert grid_diversity(f.grid) == f.diversity
        assert grid_diversity(snapshot_grid(log.final)) == diversity(log.final)


def test_convergence_iteration():
    assert convergence_iteration(fake_log([0.0] * 10), 1.0) is None
    with pytest.raises(ConfigError):
        convergence_iteration(fake_log([0.0]), 0.0)
    fits = [0.0] * 37 + [9.5] * 5
    assert convergence_iteration(fake_log(fits), 0.95) == 37


def test_drift_frequencies():
    opt = optimal_ids(F2)
    up = [i for i in opt if DIGITS[i][HEAD] == 1]
    dn = [i for i in opt if DIGITS[i][HEAD] == 2]
    log = fake_log([10.0, 10.0], actions=[[up[0]] * 4, [up[1], up[2], dn[0], 0]])
    fr = drift_frequencies(log, [up, dn])
    assert fr[0].tolist() == [1.0, 0.0]
    assert fr[1].tolist() == [0.5, 0.25]
    assert (fr.sum(axis=1) <= 1).all()
    with pytest.raises(ConfigError):
        drift_frequencies(log, [up, up[:1]])
    with pytest.raises(ConfigError):
        drift_frequencies(fake_log([1.0]), [up])


def test_drift_monotone_in_counts():
    opt = optimal_ids(F2)
    base = [opt[0], 0, 0]
    more = [opt[0], opt[1], 0]
    a = drift_frequencies(fake_log([1.0], actions=[base]), [opt])
    b = drift_frequencies(fake_log([1.0], actions=[more]), [opt])
    assert b[0, 0] >= a[0, 0]


def test_aggregate():
    log = fake_log([0.0, 2.0, 4.0], [1, 5, 3])
    agg = aggregate([log])
    assert agg.replicates == 1
    assert agg.mean_fitness_mean.tolist() == [0, 2, 4]
    assert agg.mean_fitness_se.tolist() == [0, 0, 0]
    agg = aggregate([log] * 4)
    assert agg.diversity_mean.tolist() == [1, 5, 3]
    assert agg.diversity_se.tolist() == [0, 0, 0]
    with pytest.raises(ConfigError):
        aggregate([log, fake_log([0.0])])


def test_aggregate_standard_error():
    logs = [fake_log([0.0, float(x)]) for x in (1, 2, 3, 6)]
    agg = aggregate(logs)
    x = np.array([1, 2, 3, 6.0])
    assert agg.mean_fitness_se[1] == pytest.approx(x.std(ddof=1) / 2)


def test_peak_to_decay():
    assert peak_to_decay([1, 5, 9, 7, 3, 1, 1]) == 3
    assert peak_to_decay([1, 2, 3]) == 0
    assert area_under([1, 2, 3]) == 6
