"""Synchronous iteration protocol.

Each iteration every agent, in index order and drawing from one
``random.Random`` per run, either invents (with probability ``p_invent``)
or imitates.  Inventions are kept only if mental simulation shows them
strictly fitter.  Imitation looks at what neighbours and active
broadcasters implemented at the end of the previous iteration, so
adoptions become visible one iteration later.
"""
from __future__ import annotations

import os
import random
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Optional, Sequence, Union

from .actionspace import N_ACTIONS
from .cognition import AgentState, NO_TRENDS, _TREND_TABLE, _first_fitter, invent_id
from .errors import ConfigError, ContractError
from .fitness import NeedConfig, fitness_table, optimum
from .metrics import MetricsFrame, snapshot_grid
from .world import Border, BroadcasterConfig, World, WorldConfig, active_broadcasters

__all__ = [
    "parse_ratio", "RatioRegion", "SimConfig", "SimState", "RunLog",
    "init", "step", "run",
]


def parse_ratio(value: Union[str, float, int, Fraction]) -> Fraction:
    """Invention-to-imitation odds from ``"2:1"``, ``"0.5"`` or a number."""
    try:
        if isinstance(value, str) and ":" in value:
            a, b = value.split(":")
            r = Fraction(a.strip()) / Fraction(b.strip())
        else:
            r = Fraction(value).limit_denominator(10 ** 6) if isinstance(value, float) \
                else Fraction(value)
    except (ValueError, ZeroDivisionError):
        raise ConfigError(f"ratio: cannot parse {value!r}") from None
    if r <= 0:
        raise ConfigError(f"ratio: must be positive, got {value!r}")
    return r


def format_ratio(r: Fraction) -> str:
    return f"{r.numerator}:{r.denominator}"


@dataclass(frozen=True)
class RatioRegion:
    """Override the invention ratio for agents inside a block of cells.

    ``rows``/``cols`` are inclusive ``(lo, hi)`` ranges; None means all.
    """

    ratio: Fraction
    rows: Optional[tuple[int, int]] = None
    cols: Optional[tuple[int, int]] = None

    def __post_init__(self):
        object.__setattr__(self, "ratio", parse_ratio(self.ratio))
        for key in ("rows", "cols"):
            v = getattr(self, key)
            if v is not None:
                object.__setattr__(self, key, (int(v[0]), int(v[1])))

    def contains(self, pos) -> bool:
        r, c = pos
        return ((self.rows is None or self.rows[0] <= r <= self.rows[1])
                and (self.cols is None or self.cols[0] <= c <= self.cols[1]))

    @classmethod
    def parse(cls, text: str) -> "RatioRegion":
        """``cols=4-6,ratio=2:1`` (``rows=`` likewise; missing axis means all)."""
        fields = {}
        for item in text.split(","):
            if "=" not in item:
                raise ConfigError(f"ratio_region: expected key=value, got {item!r}")
            k, v = (s.strip() for s in item.split("=", 1))
            if k in ("rows", "cols"):
                lo, _, hi = v.partition("-")
                fields[k] = (int(lo), int(hi or lo))
            elif k == "ratio":
                fields[k] = parse_ratio(v)
            else:
                raise ConfigError(f"ratio_region: unknown key {k!r}")
        if "ratio" not in fields:
            raise ConfigError("ratio_region: missing ratio")
        return cls(**fields)

    def format(self) -> str:
        out = []
        for key in ("rows", "cols"):
            v = getattr(self, key)
            if v is not None:
                out.append(f"{key}={v[0]}-{v[1]}")
        out.append(f"ratio={format_ratio(self.ratio)}")
        return ",".join(out)


@dataclass(frozen=True)
class SimConfig:
    need: NeedConfig = field(default_factory=NeedConfig)
    ratio: Fraction = Fraction(1)
    ratio_regions: tuple[RatioRegion, ...] = ()
    p_change: float = 1 / 6
    iterations: int = 100
    seed: int = 0
    net_enabled: bool = True

    def __post_init__(self):
        object.__setattr__(self, "ratio", parse_ratio(self.ratio))
        object.__setattr__(self, "ratio_regions", tuple(self.ratio_regions))
        if not 0.0 <= self.p_change <= 1.0:
            raise ConfigError(f"p_change: must be in [0, 1], got {self.p_change!r}")
        if not isinstance(self.iterations, int) or self.iterations < 0:
            raise ConfigError(f"iterations: must be a non-negative integer, got {self.iterations!r}")
        if not isinstance(self.seed, int) or not -2 ** 63 <= self.seed < 2 ** 64:
            raise ConfigError(f"seed: must be a 64-bit integer, got {self.seed!r}")

    def p_invent_at(self, pos) -> float:
        r = self.ratio
        for region in self.ratio_regions:
            if region.contains(pos):
                r = region.ratio
        return float(r / (r + 1))

    @property
    def p_invent(self) -> float:
        return float(self.ratio / (self.ratio + 1))


@dataclass
class SimState:
    sim: SimConfig
    world: World
    agents: list[AgentState]
    rng: random.Random
    iteration: int = 0

    @property
    def actions(self) -> list[int]:
        return [a.action_id for a in self.agents]

    def at_optimum(self) -> bool:
        best = optimum(self.sim.need)
        return all(a.best_fitness == best for a in self.agents)


@dataclass
class RunLog:
    frames: list[MetricsFrame]
    final: SimState
    optimum: float

    @property
    def mean_fitness(self) -> list[float]:
        return [f.mean_fitness for f in self.frames]

    @property
    def diversity(self) -> list[int]:
        return [f.diversity for f in self.frames]


def init(sim: SimConfig, world: WorldConfig, rng: Optional[random.Random] = None,
         borders: Sequence[Border] = (),
         broadcasters: BroadcasterConfig = BroadcasterConfig()) -> SimState:
    """Every agent starts immobile: all-Stationary action, zero trends."""
    if rng is None:
        rng = random.Random(sim.seed)
    w = World.build(world, rng, borders, broadcasters)
    f0 = fitness_table(sim.need)[0]
    agents = [AgentState(position=p, action_id=0, best_fitness=f0, trends=NO_TRENDS,
                         p_invent=sim.p_invent_at(p), net_enabled=sim.net_enabled)
              for p in w.positions]
    return SimState(sim, w, agents, rng)


def step(state: SimState) -> SimState:
    """Advance one iteration in place and return ``state``."""
    sim = state.sim
    t = state.iteration
    table = fitness_table(sim.need)
    rng = state.rng
    rand = rng.random
    p_change = sim.p_change
    links = state.world.links
    agents = state.agents
    prev = [a.action_id for a in agents]
    leaders = active_broadcasters(state.world.broadcasters, t)

    for i, agent in enumerate(agents):
        if rand() < agent.p_invent:
            cand = invent_id(agent.action_id, agent.trends, agent.net_enabled, p_change, rng)
        else:
            pool = []
            seen = set()
            for j, crossed in links[i]:
                seen.add(j)
                if crossed and not _permitted(crossed, t, rand):
                    continue
                pool.append(prev[j])
            for j in leaders:
                if j != i and j not in seen:
                    pool.append(prev[j])
            cand = _first_fitter(pool, table, agent.best_fitness, rng)
            if cand is None:
                continue
        f = table[cand]
        if f > agent.best_fitness:
            agent.action_id = cand
            agent.best_fitness = f
            agent.trends = _TREND_TABLE[cand] if agent.net_enabled else NO_TRENDS
    state.iteration = t + 1
    return state


def _permitted(crossed, t, rand) -> bool:
    p = 1.0
    for b in crossed:
        p *= b.permeability(t)
    if p >= 1.0:
        return True
    if p <= 0.0:
        return False
    return rand() < p


def _frame(state: SimState, grid: bool, actions: bool) -> MetricsFrame:
    ids = [a.action_id for a in state.agents]
    return MetricsFrame(
        iteration=state.iteration,
        mean_fitness=sum(a.best_fitness for a in state.agents) / len(ids),
        diversity=len(set(ids)),
        grid=snapshot_grid(state) if grid else None,
        actions=tuple(ids) if actions else None,
    )


def checking() -> bool:
    """Monotonicity checks in ``run`` are on when EVOC_CHECK_INVARIANTS=1."""
    return os.environ.get("EVOC_CHECK_INVARIANTS") == "1"


def _check(before: list[float], state: SimState, frames: list[MetricsFrame]) -> None:
    for i, (f0, a) in enumerate(zip(before, state.agents)):
        if a.best_fitness < f0:
            raise ContractError(f"agent {i}: best fitness fell from {f0} to {a.best_fitness}")
    if frames[-1].mean_fitness < frames[-2].mean_fitness:
        raise ContractError(f"mean fitness fell at iteration {frames[-1].iteration}")


def run(sim: SimConfig, world: WorldConfig, borders: Sequence[Border] = (),
        broadcasters: BroadcasterConfig = BroadcasterConfig(), *,
        snapshot_every: Optional[int] = None, record_actions: bool = False,
        fast_forward: bool = True) -> RunLog:
    """Run ``sim.iterations`` steps and record a frame per iteration.

    Once every agent implements a global optimum nothing can change, so
    with ``fast_forward`` the remaining frames are copied instead of
    simulated.  Frames are identical either way; only the final rng
    state differs.
    """
    state = init(sim, world, None, borders, broadcasters)
    best = optimum(sim.need)

    def want_grid(t):
        return bool(snapshot_every) and t % snapshot_every == 0

    frames = [_frame(state, want_grid(0), record_actions)]
    check = checking()
    while state.iteration < sim.iterations:
        if fast_forward and all(a.best_fitness == best for a in state.agents):
            last = frames[-1]
            for t in range(state.iteration + 1, sim.iterations + 1):
                frames.append(replace(last, iteration=t,
                                      grid=snapshot_grid(state) if want_grid(t) else None))
            state.iteration = sim.iterations
            break
        before = [a.best_fitness for a in state.agents] if check else None
        step(state)
        frames.append(_frame(state, want_grid(state.iteration), record_actions))
        if check:
            _check(before, state, frames)
    return RunLog(frames, state, best)
