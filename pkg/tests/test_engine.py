import random
from fractions import Fraction

import pytest

from evoc.actionspace import Action, PartState, encode
from evoc.engine import RatioRegion, SimConfig, init, parse_ratio, run, step
from evoc.errors import ConfigError
from evoc.fitness import Need, NeedConfig, fitness_table, optimal_ids
from evoc.metrics import diversity, mean_fitness
from evoc.world import Border, BroadcasterConfig, Topology, WorldConfig

F2 = NeedConfig(Need.F2)
D, U = PartState.DOWN, PartState.UP


def test_init():
    s = init(SimConfig(need=F2), WorldConfig())
    assert len(s.agents) == 100
    assert mean_fitness(s) == 0
    assert diversity(s) == 1
    assert all(a.action_id == 0 and a.trends.movement == 0 for a in s.agents)
    s = init(SimConfig(need=NeedConfig("f1")), WorldConfig(4, 4, density=0.5))
    assert len(s.agents) == 8 and diversity(s) == 1


def test_parse_ratio():
    assert parse_ratio("2:1") == 2
    assert parse_ratio("1:2") == Fraction(1, 2)
    assert SimConfig(ratio="2:1").p_invent == pytest.approx(2 / 3)
    for bad in ("0:1", "a:b", "1:0", -1):
        with pytest.raises(ConfigError):
            parse_ratio(bad)


def test_ratio_regions():
    sim = SimConfig(ratio="1:1", ratio_regions=(RatioRegion.parse("cols=4-6,ratio=2:1"),))
    s = init(sim, WorldConfig(7, 7))
    for a in s.agents:
        assert a.p_invent == pytest.approx(2 / 3 if a.position[1] >= 4 else 1 / 2)
    r = RatioRegion.parse("rows=1-2,cols=3-3,ratio=4:1")
    assert RatioRegion.parse(r.format()) == r


def test_step_identity_at_optimum():
    s = init(SimConfig(need=F2, seed=3), WorldConfig(5, 5))
    best = optimal_ids(F2)
    rng = random.Random(0)
    for a in s.agents:
        a.action_id = rng.choice(best)
        a.best_fitness = 10.0
    before = s.actions
    for _ in range(20):
        step(s)
        assert s.actions == before


def test_isolated_imitator_never_changes():
    s = init(SimConfig(need=F2), WorldConfig(5, 5, placement=((2, 2),)))
    s.agents[0].p_invent = 0.0
    for _ in range(50):
        step(s)
    assert s.actions == [0] and s.iteration == 50


def test_step_mean_fitness_non_decreasing():
    s = init(SimConfig(need=NeedConfig("both"), seed=1), WorldConfig())
    prev = mean_fitness(s)
    for _ in range(30):
        step(s)
        assert mean_fitness(s) >= prev
        prev = mean_fitness(s)


def test_synchronous_visibility():
    # two agents; the left one is forced to invent, the right to imitate.  An
    # adoption by the left agent must not be visible to the right one in the same iteration.
    for seed in range(30):
        s = init(SimConfig(need=F2, p_change=1.0, seed=seed), WorldConfig(1, 2, Topology.BOUNDED))
        s.agents[0].p_invent, s.agents[1].p_invent = 1.0, 0.0
        step(s)
        assert s.agents[1].action_id == 0
        after_first = s.agents[0].action_id
        step(s)
        expected = after_first if s.agents[0].best_fitness > 0 and after_first != 0 else 0
        assert s.agents[1].action_id == expected


def test_broadcaster_visible_everywhere():
    # isolated agents can only learn from the leader
    cells = ((0, 0), (0, 4), (4, 0), (4, 4))
    sim = SimConfig(need=F2, seed=2)
    s = init(sim, WorldConfig(5, 5, placement=cells), borders=(),
             broadcasters=BroadcasterConfig(ids=(0,)))
    s.agents[0].p_invent = 1.0
    for a in s.agents[1:]:
        a.p_invent = 0.0
    for _ in range(200):
        step(s)
    assert s.agents[0].best_fitness == 10
    assert all(a.action_id == s.agents[0].action_id for a in s.agents)


def test_closed_border_blocks_imitation():
    b = Border("v", 0, 0.0, 0.0)
    s = init(SimConfig(need=F2), WorldConfig(1, 2, Topology.BOUNDED), borders=(b,))
    s.agents[0].action_id, s.agents[0].best_fitness = encode(Action(left_leg=D)), 2.5
    s.agents[1].p_invent = 0.0
    for _ in range(50):
        step(s)
    assert s.agents[1].action_id == 0


def test_run_zero_iterations():
    log = run(SimConfig(iterations=0), WorldConfig())
    assert len(log.frames) == 1 and log.frames[0].iteration == 0


def test_run_deterministic():
    sim = SimConfig(need=NeedConfig("f1"), iterations=60, seed=99)
    a = run(sim, WorldConfig(density=0.6), broadcasters=BroadcasterConfig(random_count=2))
    b = run(sim, WorldConfig(density=0.6), broadcasters=BroadcasterConfig(random_count=2))
    assert a.frames == b.frames and a.final.actions == b.final.actions


def test_fast_forward_matches_full_simulation():
    for seed in range(5):
        sim = SimConfig(need=F2, iterations=80, seed=seed)
        a = run(sim, WorldConfig(), snapshot_every=10, record_actions=True)
        b = run(sim, WorldConfig(), snapshot_every=10, record_actions=True, fast_forward=False)
        assert a.frames == b.frames


def test_frozen_at_optimum():
    log = run(SimConfig(need=F2, iterations=100, seed=4), WorldConfig(),
              record_actions=True, fast_forward=False)
    best = set(optimal_ids(F2))
    table = fitness_table(F2)
    t0 = next(f.iteration for f in log.frames if all(a in best for a in f.actions))
    assert all(f.actions == log.frames[t0].actions for f in log.frames[t0:])


def test_f2_baseline_converges_in_most_seeds():
    hits = sum(run(SimConfig(need=F2, iterations=500, seed=s), WorldConfig()).frames[-1]
               .mean_fitness == 10 for s in range(40))
    assert hits >= 36


@pytest.mark.parametrize("topology", ["toroidal", "bounded"])
@pytest.mark.parametrize("density", [0.3, 1.0])
def test_diversity_bounds(topology, density):
    log = run(SimConfig(need=NeedConfig("f1"), iterations=60, seed=5),
              WorldConfig(topology=Topology(topology), density=density))
    n = len(log.final.agents)
    assert all(1 <= f.diversity <= min(n, 729) for f in log.frames)
    assert all(x <= y for x, y in zip(log.mean_fitness, log.mean_fitness[1:]))


def test_agent_count_constant():
    sim = SimConfig(iterations=30)
    log = run(sim, WorldConfig(density=0.4))
    assert len(log.final.agents) == 40


def test_sim_config_validation():
    with pytest.raises(ConfigError):
        SimConfig(p_change=1.5)
    with pytest.raises(ConfigError):
        SimConfig(iterations=-1)
    with pytest.raises(ConfigError):
        SimConfig(seed=2 ** 70)
