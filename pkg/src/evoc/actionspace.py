"""The discrete space of actions (and ideas).

Six body parts, each Stationary, Up or Down, give 3**6 = 729 actions.
An action is encoded as the base-3 integer ``sum(digit_k * 3**k)`` with
the parts taken in the order of ``PARTS`` and digits 0/1/2 for
Stationary/Up/Down.  That integer (``ActionId``) is the representation
used in every CSV and snapshot file.
"""
from __future__ import annotations

import enum
from typing import NamedTuple

__all__ = [
    "PartState", "Action", "Idea", "PARTS", "N_PARTS", "N_ACTIONS",
    "LEFT_ARM", "RIGHT_ARM", "LEFT_LEG", "RIGHT_LEG", "HEAD", "HIPS",
    "STILL", "encode", "decode", "enumerate_all", "DIGITS",
]


class PartState(enum.IntEnum):
    """State of one body part; the int value is its base-3 digit."""

    STATIONARY = 0
    UP = 1
    DOWN = 2

    @property
    def activation(self) -> float:
        return _ACTIVATION[self]


_ACTIVATION = {PartState.STATIONARY: 0.0, PartState.UP: 0.5, PartState.DOWN: -0.5}

PARTS = ("left_arm", "right_arm", "left_leg", "right_leg", "head", "hips")
LEFT_ARM, RIGHT_ARM, LEFT_LEG, RIGHT_LEG, HEAD, HIPS = range(6)
N_PARTS = len(PARTS)
N_ACTIONS = 3 ** N_PARTS


class Action(NamedTuple):
    left_arm: PartState = PartState.STATIONARY
    right_arm: PartState = PartState.STATIONARY
    left_leg: PartState = PartState.STATIONARY
    right_leg: PartState = PartState.STATIONARY
    head: PartState = PartState.STATIONARY
    hips: PartState = PartState.STATIONARY

    @classmethod
    def from_digits(cls, digits) -> "Action":
        if len(digits) != N_PARTS:
            raise ValueError(f"an action has {N_PARTS} parts, got {len(digits)}")
        return cls(*(PartState(d) for d in digits))

    def activations(self) -> tuple[float, ...]:
        return tuple(p.activation for p in self)

    def replace_part(self, k: int, state: PartState) -> "Action":
        parts = list(self)
        parts[k] = PartState(state)
        return Action(*parts)


# Ideas live in the same thresholded space as actions.
Idea = Action

STILL = Action()


def encode(action) -> int:
    """Return the ActionId of ``action`` (any length-6 sequence of digits)."""
    return sum(int(d) * 3 ** k for k, d in enumerate(action))


def _digits(action_id: int) -> tuple[int, ...]:
    out = []
    for _ in range(N_PARTS):
        action_id, d = divmod(action_id, 3)
        out.append(d)
    return tuple(out)


# DIGITS[i] is the 6-tuple of base-3 digits of ActionId i; used by the hot loops.
DIGITS: tuple[tuple[int, ...], ...] = tuple(_digits(i) for i in range(N_ACTIONS))
_ACTIONS: tuple[Action, ...] = tuple(Action.from_digits(d) for d in DIGITS)


def decode(action_id: int) -> Action:
    if not isinstance(action_id, (int,)) or isinstance(action_id, bool):
        action_id = int(action_id)
    if not 0 <= action_id < N_ACTIONS:
        raise ValueError(f"ActionId must be in [0, {N_ACTIONS - 1}], got {action_id}")
    return _ACTIONS[action_id]


def enumerate_all() -> tuple[Action, ...]:
    """All 729 actions in ascending ActionId order."""
    return _ACTIONS
