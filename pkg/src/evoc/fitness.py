"""Fitness functions scoring an action against the agents' needs.

``fitness_f1`` scores a mating display: movement, same-direction symmetry
of the arm and leg pairs, head and hip movement.  The symmetry terms make
it epistatic (one arm's worth depends on the other arm).  ``fitness_f2``
scores tool making: planted (Down) feet and a moving head.  Both top out
at 10.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import lru_cache

from .actionspace import (
    DIGITS, HEAD, HIPS, LEFT_ARM, LEFT_LEG, N_ACTIONS, RIGHT_ARM, RIGHT_LEG,
    PartState, encode,
)
from .errors import ConfigError

__all__ = [
    "Need", "NeedConfig", "fitness_f1", "fitness_f2", "fitness_combined",
    "evaluate", "fitness_table", "optimum", "optimal_ids", "TOOL_CONSTANT",
]

TOOL_CONSTANT = 2.5
_DOWN = int(PartState.DOWN)


class Need(str, enum.Enum):
    F1 = "f1"
    F2 = "f2"
    BOTH = "both"


@dataclass(frozen=True)
class NeedConfig:
    """Which need(s) agents try to satisfy; ``y``/``z`` weight F1/F2 in BOTH mode."""

    mode: Need = Need.F2
    y: float = 1.0
    z: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "mode", Need(self.mode))
        for key in ("y", "z"):
            v = getattr(self, key)
            if not (isinstance(v, (int, float)) and math.isfinite(v) and v >= 0):
                raise ConfigError(f"{key}: weight must be a finite non-negative number, got {v!r}")
        if self.mode is Need.BOTH and self.y == 0 and self.z == 0:
            raise ConfigError("y, z: at least one need weight must be positive")


def _as_digits(action) -> tuple[int, ...]:
    if isinstance(action, int):
        return DIGITS[action]
    return tuple(int(p) for p in action)


def _f1(d) -> float:
    moved = sum(1 for x in d if x)
    arms_sym = d[LEFT_ARM] != 0 and d[LEFT_ARM] == d[RIGHT_ARM]
    legs_sym = d[LEFT_LEG] != 0 and d[LEFT_LEG] == d[RIGHT_LEG]
    return (0.5 * moved + 2.0 * arms_sym + 2.0 * legs_sym
            + 2.0 * (d[HEAD] != 0) + 1.0 * (d[HIPS] != 0))


def _f2(d) -> float:
    left = d[LEFT_LEG] == _DOWN    # activation -0.5
    right = d[RIGHT_LEG] == _DOWN
    head = d[HEAD] != 0            # activation != 0
    return TOOL_CONSTANT * (left + right + 2 * head)


def fitness_f1(action) -> float:
    return _f1(_as_digits(action))


def fitness_f2(action) -> float:
    return _f2(_as_digits(action))


def fitness_combined(action, cfg: NeedConfig) -> float:
    d = _as_digits(action)
    return 0.5 * (cfg.y * _f1(d) + cfg.z * _f2(d))


def evaluate(action, cfg: NeedConfig) -> float:
    """Mental simulation: how fit ``action`` (an Action, Idea or ActionId) would be."""
    if cfg.mode is Need.F1:
        return fitness_f1(action)
    if cfg.mode is Need.F2:
        return fitness_f2(action)
    return fitness_combined(action, cfg)


@lru_cache(maxsize=64)
def fitness_table(cfg: NeedConfig) -> tuple[float, ...]:
    """``evaluate`` for every ActionId, indexable by id."""
    return tuple(evaluate(i, cfg) for i in range(N_ACTIONS))


def optimum(cfg: NeedConfig) -> float:
    return max(fitness_table(cfg))


def optimal_ids(cfg: NeedConfig) -> tuple[int, ...]:
    table = fitness_table(cfg)
    best = max(table)
    return tuple(i for i, f in enumerate(table) if f == best)
