"""Agent cognition: trend detection, knowledge-based operators, invention
and choosing whom to imitate.

The autoassociative network is modelled by what it does rather than by
trained weights.  Its hidden nodes are computed directly from the stored
best idea (``compute_trends``), and invention reads MOVEMENT and SYMMETRY
back to bias which state a mutating part takes.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .actionspace import (
    DIGITS, LEFT_ARM, LEFT_LEG, N_ACTIONS, N_PARTS, RIGHT_ARM, RIGHT_LEG,
    Action, decode, encode,
)
from .errors import ContractError
from .fitness import NeedConfig, evaluate, fitness_table

__all__ = [
    "TrendActivations", "AgentState", "compute_trends", "update_kbo",
    "choose_parts", "mutate_part", "invent", "invent_id",
    "select_imitation_target", "adopt", "PARTNER", "NO_TRENDS",
]

# symmetric partner of each part; head and hips have none
PARTNER = (RIGHT_ARM, LEFT_ARM, RIGHT_LEG, LEFT_LEG, None, None)


@dataclass(frozen=True)
class TrendActivations:
    movement: float = 0.0
    symmetry: float = 0.0
    left: float = 0.0
    right: float = 0.0
    forelimb: float = 0.0
    hindlimb: float = 0.0


NO_TRENDS = TrendActivations()


def _trends(d) -> TrendActivations:
    moving = [x != 0 for x in d]
    sym = ((d[LEFT_ARM] != 0 and d[LEFT_ARM] == d[RIGHT_ARM])
           + (d[LEFT_LEG] != 0 and d[LEFT_LEG] == d[RIGHT_LEG]))
    return TrendActivations(
        movement=sum(moving) / N_PARTS,
        symmetry=sym / 2,
        left=(moving[LEFT_ARM] + moving[LEFT_LEG]) / 2,
        right=(moving[RIGHT_ARM] + moving[RIGHT_LEG]) / 2,
        forelimb=(moving[LEFT_ARM] + moving[RIGHT_ARM]) / 2,
        hindlimb=(moving[LEFT_LEG] + moving[RIGHT_LEG]) / 2,
    )


_TREND_TABLE = tuple(_trends(d) for d in DIGITS)


def compute_trends(idea) -> TrendActivations:
    """Hidden-node activations for ``idea`` (an Action or ActionId)."""
    if isinstance(idea, int):
        return _TREND_TABLE[idea]
    return _TREND_TABLE[encode(idea)]


@dataclass
class AgentState:
    """One agent.  Its best idea is always the action its body implements,
    so both are stored as a single ActionId."""

    position: tuple[int, int]
    action_id: int = 0
    best_fitness: float = 0.0
    trends: TrendActivations = NO_TRENDS
    p_invent: float = 0.5
    net_enabled: bool = True

    @property
    def best_idea(self) -> Action:
        return decode(self.action_id)

    implemented = best_idea


def update_kbo(agent: AgentState) -> AgentState:
    agent.trends = _TREND_TABLE[agent.action_id] if agent.net_enabled else NO_TRENDS
    return agent


def choose_parts(p_change: float, rng: random.Random) -> list[int]:
    """Indices of the parts that will mutate, each chosen with probability ``p_change``."""
    return [k for k in range(N_PARTS) if rng.random() < p_change]


def mutate_part(digits: list, k: int, movement: float, symmetry: float,
                net_enabled: bool, rng: random.Random) -> int:
    """New digit for part ``k`` of the working idea ``digits``."""
    if not net_enabled:
        return int(rng.random() * 3)
    partner = PARTNER[k]
    if partner is not None and digits[partner] != 0:
        if symmetry > 0.0 and rng.random() < symmetry:
            return digits[partner]
    p_move = 0.5 * (1.0 + movement)
    u = rng.random()
    if u < 0.5 * p_move:
        return 1
    if u < p_move:
        return 2
    return 0


def invent_id(action_id: int, trends: TrendActivations, net_enabled: bool,
              p_change: float, rng: random.Random) -> int:
    parts = choose_parts(p_change, rng)
    if not parts:
        return action_id
    d = list(DIGITS[action_id])
    for k in parts:
        d[k] = mutate_part(d, k, trends.movement, trends.symmetry, net_enabled, rng)
    return d[0] + 3 * d[1] + 9 * d[2] + 27 * d[3] + 81 * d[4] + 243 * d[5]


def invent(agent: AgentState, p_change: float, rng: random.Random) -> Action:
    """A new idea derived from the agent's best idea.

    Each part mutates independently with probability ``p_change``; a
    mutating part may land on its old state.  Parts are visited in
    canonical order, so a leg copying its partner sees the partner's
    already-mutated state.
    """
    if not 0.0 <= p_change <= 1.0:
        raise ValueError(f"p_change must be in [0, 1], got {p_change}")
    return decode(invent_id(agent.action_id, agent.trends, agent.net_enabled, p_change, rng))


def select_imitation_target(agent: AgentState, candidates: Sequence, rng: random.Random,
                            cfg: NeedConfig) -> Optional[Action]:
    """Observe candidates in random order; return the first strictly fitter action.

    ``candidates`` holds ``(source, action)`` pairs already filtered for
    visibility.  Returns None when nobody is fitter.
    """
    table = fitness_table(cfg)
    pool = [c[1] if isinstance(c[1], int) else encode(c[1]) for c in candidates]
    found = _first_fitter(pool, table, agent.best_fitness, rng)
    return None if found is None else decode(found)


def _first_fitter(pool: list, table, own: float, rng: random.Random) -> Optional[int]:
    # lazy Fisher-Yates: stop drawing as soon as a fitter action turns up
    n = len(pool)
    for i in range(n):
        j = i + int(rng.random() * (n - i))
        pool[i], pool[j] = pool[j], pool[i]
        if table[pool[i]] > own:
            return pool[i]
    return None


def adopt(agent: AgentState, idea, cfg: NeedConfig) -> AgentState:
    """Learn and implement ``idea``; it must be strictly fitter than the current one."""
    idea_id = idea if isinstance(idea, int) else encode(idea)
    if not 0 <= idea_id < N_ACTIONS:
        raise ValueError(f"invalid ActionId {idea_id}")
    f = fitness_table(cfg)[idea_id]
    if not f > agent.best_fitness:
        raise ContractError(
            f"adopt: idea fitness {f} does not exceed current best {agent.best_fitness}")
    agent.action_id = idea_id
    agent.best_fitness = f
    return update_kbo(agent)
