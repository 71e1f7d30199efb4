"""Grid geometry: placement, Moore neighbourhoods, borders and broadcasters."""
from __future__ import annotations

import enum
import math
import random
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .errors import ConfigError

__all__ = [
    "Topology", "Orientation", "WorldConfig", "Border", "BroadcasterConfig",
    "World", "place_agents", "neighbors", "borders_crossed",
    "imitation_permitted", "active_broadcasters",
]

Pos = tuple[int, int]


class Topology(str, enum.Enum):
    TOROIDAL = "toroidal"
    BOUNDED = "bounded"


class Orientation(str, enum.Enum):
    VERTICAL = "vertical"      # between two columns
    HORIZONTAL = "horizontal"  # between two rows

    @classmethod
    def _missing_(cls, value):
        short = {"v": cls.VERTICAL, "h": cls.HORIZONTAL}
        return short.get(str(value).lower())


@dataclass(frozen=True)
class WorldConfig:
    rows: int = 10
    cols: int = 10
    topology: Topology = Topology.TOROIDAL
    density: float = 1.0
    placement: Optional[tuple[Pos, ...]] = None   # explicit cells, else uniform

    def __post_init__(self):
        object.__setattr__(self, "topology", Topology(self.topology))
        for key in ("rows", "cols"):
            v = getattr(self, key)
            if not isinstance(v, int) or isinstance(v, bool) or v < 1:
                raise ConfigError(f"{key}: must be a positive integer, got {v!r}")
        if not (isinstance(self.density, (int, float)) and 0.0 < self.density <= 1.0):
            raise ConfigError(f"density: must be in (0, 1], got {self.density!r}")
        if self.placement is not None:
            cells = tuple((int(r), int(c)) for r, c in self.placement)
            object.__setattr__(self, "placement", cells)
            if len(set(cells)) != len(cells):
                raise ConfigError("placement: duplicate cells")
            for r, c in cells:
                if not (0 <= r < self.rows and 0 <= c < self.cols):
                    raise ConfigError(f"placement: cell {(r, c)} outside {self.rows}x{self.cols} grid")
            if not cells:
                raise ConfigError("placement: empty population")
        elif math.floor(self.density * self.rows * self.cols) < 1:
            raise ConfigError("density: yields an empty population")

    @property
    def n_cells(self) -> int:
        return self.rows * self.cols


@dataclass(frozen=True)
class Border:
    """A frontier between column (or row) ``index`` and ``index + 1``.

    On a toroidal grid ``index = cols - 1`` is the wrap-around seam.
    Permeability is the probability that imitation across the border is
    allowed; it moves linearly from ``p_start`` to ``p_end`` between
    iterations ``t_start`` and ``t_end``.
    """

    orientation: Orientation
    index: int
    p_start: float = 0.0
    p_end: float = 0.0
    t_start: int = 0
    t_end: int = 0

    def __post_init__(self):
        object.__setattr__(self, "orientation", Orientation(self.orientation))
        for key in ("p_start", "p_end"):
            v = getattr(self, key)
            if not 0.0 <= v <= 1.0:
                raise ConfigError(f"border.{key}: must be in [0, 1], got {v!r}")
        if self.t_end < self.t_start:
            raise ConfigError("border.t_end: must not precede t_start")

    def permeability(self, t: float) -> float:
        if t <= self.t_start:
            return self.p_start
        if t >= self.t_end:
            return self.p_end
        frac = (t - self.t_start) / (self.t_end - self.t_start)
        return self.p_start + frac * (self.p_end - self.p_start)

    @classmethod
    def parse(cls, text: str) -> "Border":
        """``orientation,index,p_start,p_end,t_start,t_end`` (orientation v/h)."""
        parts = [s.strip() for s in text.split(",")]
        if len(parts) != 6:
            raise ConfigError(f"border: expected 6 comma-separated fields, got {text!r}")
        try:
            return cls(Orientation(parts[0].lower()), int(parts[1]), float(parts[2]), float(parts[3]),
                       int(parts[4]), int(parts[5]))
        except ValueError as exc:
            raise ConfigError(f"border: {exc}") from None

    def format(self) -> str:
        return (f"{self.orientation.value[0]},{self.index},{self.p_start:g},{self.p_end:g},"
                f"{self.t_start},{self.t_end}")


@dataclass(frozen=True)
class BroadcasterConfig:
    """Leaders whose actions every agent can see.

    Give explicit agent indices in ``ids`` or ask for ``random_count``
    leaders drawn at initialisation.  ``period``/``duty`` make the
    broadcast intermittent: on while ``t % period < duty``.
    """

    ids: tuple[int, ...] = ()
    random_count: int = 0
    period: Optional[int] = None
    duty: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "ids", tuple(int(i) for i in self.ids))
        if self.ids and self.random_count:
            raise ConfigError("broadcasters: give explicit ids or a random count, not both")
        if self.random_count < 0:
            raise ConfigError("broadcasters: random count must be >= 0")
        if (self.period is None) != (self.duty is None):
            raise ConfigError("broadcast_schedule: period and duty go together")
        if self.period is not None and not (self.period >= 1 and 0 <= self.duty <= self.period):
            raise ConfigError("broadcast_schedule: need period >= 1 and 0 <= duty <= period")

    @property
    def enabled(self) -> bool:
        return bool(self.ids or self.random_count)

    @property
    def constant(self) -> bool:
        return self.period is None


def active_broadcasters(cfg: BroadcasterConfig, t: int) -> list[int]:
    if not cfg.ids:
        return []
    if cfg.period is None or t % cfg.period < cfg.duty:
        return list(cfg.ids)
    return []


def place_agents(cfg: WorldConfig, rng: random.Random) -> list[Pos]:
    """Occupied cells in agent-index order."""
    if cfg.placement is not None:
        return list(cfg.placement)
    n = cfg.n_cells
    k = math.floor(cfg.density * n)
    cells = range(n) if k == n else sorted(rng.sample(range(n), k))
    return [divmod(i, cfg.cols) for i in cells]


def _moore(cfg: WorldConfig, pos: Pos) -> list[Pos]:
    r, c = pos
    out = []
    for dr in (-1, 0, 1):
        for dc in (-1, 0, 1):
            if dr == 0 and dc == 0:
                continue
            rr, cc = r + dr, c + dc
            if cfg.topology is Topology.TOROIDAL:
                rr %= cfg.rows
                cc %= cfg.cols
            elif not (0 <= rr < cfg.rows and 0 <= cc < cfg.cols):
                continue
            if (rr, cc) != pos and (rr, cc) not in out:
                out.append((rr, cc))
    return out


def _crossing(a: int, b: int, n: int) -> Optional[int]:
    # index of the boundary crossed stepping from line a to adjacent line b
    if a == b:
        return None
    if b == a + 1:
        return a
    if b == a - 1:
        return b
    if (a + 1) % n == b:
        return a
    return b


@dataclass
class World:
    cfg: WorldConfig
    positions: list[Pos]
    borders: tuple[Border, ...] = ()
    broadcasters: BroadcasterConfig = field(default_factory=BroadcasterConfig)

    def __post_init__(self):
        self.index = {p: i for i, p in enumerate(self.positions)}
        if len(self.index) != len(self.positions):
            raise ConfigError("placement: duplicate cells")
        for b in self.borders:
            lim = self.cfg.cols if b.orientation is Orientation.VERTICAL else self.cfg.rows
            if not 0 <= b.index < lim:
                raise ConfigError(f"border.index: {b.index} outside grid")
        for i in self.broadcasters.ids:
            if not 0 <= i < len(self.positions):
                raise ConfigError(f"broadcasters: agent id {i} out of range")
        # per agent: list of (neighbour index, borders separating them)
        self.links: list[list[tuple[int, tuple[Border, ...]]]] = []
        for p in self.positions:
            row = []
            for q in _moore(self.cfg, p):
                j = self.index.get(q)
                if j is not None:
                    row.append((j, tuple(borders_crossed(self, p, q))))
            self.links.append(row)

    @classmethod
    def build(cls, cfg: WorldConfig, rng: random.Random, borders: Sequence[Border] = (),
              broadcasters: BroadcasterConfig = BroadcasterConfig()) -> "World":
        positions = place_agents(cfg, rng)
        if broadcasters.random_count:
            if broadcasters.random_count > len(positions):
                raise ConfigError("broadcasters: more leaders than agents")
            ids = tuple(sorted(rng.sample(range(len(positions)), broadcasters.random_count)))
            broadcasters = BroadcasterConfig(ids=ids, period=broadcasters.period,
                                             duty=broadcasters.duty)
        return cls(cfg, positions, tuple(borders), broadcasters)

    @property
    def n_agents(self) -> int:
        return len(self.positions)


def neighbors(world: World, pos: Pos) -> list[Pos]:
    """Occupied Moore neighbours of ``pos``."""
    return [q for q in _moore(world.cfg, pos) if q in world.index]


def borders_crossed(world: World, a: Pos, b: Pos) -> list[Border]:
    out = []
    for border in world.borders:
        if border.orientation is Orientation.VERTICAL:
            idx = _crossing(a[1], b[1], world.cfg.cols)
        else:
            idx = _crossing(a[0], b[0], world.cfg.rows)
        if idx is not None and idx == border.index:
            out.append(border)
    return out


def imitation_permitted(borders: Sequence[Border], t: int, rng: random.Random) -> bool:
    """Decide whether imitation across ``borders`` goes through at iteration ``t``."""
    if not borders:
        return True
    p = 1.0
    for b in borders:
        p *= b.permeability(t)
    if p >= 1.0:
        return True
    if p <= 0.0:
        return False
    return rng.random() < p
