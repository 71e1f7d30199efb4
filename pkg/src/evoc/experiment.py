"""Run manifests, figure presets and the replicate harness.

A ``RunManifest`` is a flat record of plain values (strings, numbers,
lists) mirroring the command-line flags, so it round-trips through YAML
or JSON unchanged.  ``run_experiment`` writes one CSV per replicate, an
aggregated CSV with standard errors and optional ActionId snapshots.
"""
from __future__ import annotations

import dataclasses
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, fields
from pathlib import Path
from typing import Optional

import yaml

from .engine import RatioRegion, RunLog, SimConfig, format_ratio, parse_ratio, run
from .errors import ConfigError
from .fitness import Need, NeedConfig
from .metrics import AggregateSeries, aggregate
from .world import Border, BroadcasterConfig, Topology, WorldConfig

__all__ = [
    "RunManifest", "PRESETS", "SWEEPS", "preset", "run_replicates",
    "run_experiment", "emit_snapshot", "write_run_csv", "write_aggregate_csv",
    "default_out_dir",
]


def default_out_dir() -> str:
    return os.environ.get("EVOC_OUT_DIR", "evoc_out")


@dataclass(frozen=True)
class RunManifest:
    rows: int = 10
    cols: int = 10
    topology: str = "toroidal"
    density: float = 1.0
    placement: Optional[list] = None
    ratio: str = "1:1"
    ratio_regions: list = field(default_factory=list)
    p_change: float = 1 / 6
    need: str = "f2"
    y: float = 1.0
    z: float = 1.0
    iterations: int = 500
    replicates: int = 100
    seed: int = 0
    broadcasters: str = ""                 # "", "random:K" or "i,j,..."
    broadcast_schedule: str = "constant"   # or "intermittent:PERIOD:DUTY"
    borders: list = field(default_factory=list)
    net: bool = True
    snapshot_every: Optional[int] = None
    out_dir: str = ""

    def __post_init__(self):
        if not isinstance(self.replicates, int) or self.replicates < 1:
            raise ConfigError(f"replicates: must be a positive integer, got {self.replicates!r}")
        if self.snapshot_every is not None and self.snapshot_every < 1:
            raise ConfigError("snapshot_every: must be a positive integer")
        # build everything once so bad values fail here, naming the key
        self.sim_config()
        self.world_config()
        self.border_list()
        self.broadcaster_config()

    # -- conversion to the typed configs ---------------------------------
    def sim_config(self, replicate: int = 0) -> SimConfig:
        try:
            need = NeedConfig(Need(self.need), float(self.y), float(self.z))
        except ValueError as exc:
            if isinstance(exc, ConfigError):
                raise
            raise ConfigError(f"need: must be one of f1, f2, both; got {self.need!r}") from None
        return SimConfig(
            need=need,
            ratio=parse_ratio(self.ratio),
            ratio_regions=tuple(RatioRegion.parse(s) for s in self.ratio_regions),
            p_change=float(self.p_change),
            iterations=self.iterations,
            seed=self.seed + replicate,
            net_enabled=bool(self.net),
        )

    def world_config(self) -> WorldConfig:
        try:
            topology = Topology(self.topology)
        except ValueError:
            raise ConfigError(f"topology: must be toroidal or bounded, got {self.topology!r}") from None
        placement = None if self.placement is None else tuple(tuple(p) for p in self.placement)
        return WorldConfig(self.rows, self.cols, topology, float(self.density), placement)

    def border_list(self) -> list[Border]:
        return [Border.parse(s) for s in self.borders]

    def broadcaster_config(self) -> BroadcasterConfig:
        period = duty = None
        sched = self.broadcast_schedule.strip().lower()
        if sched.startswith("intermittent"):
            try:
                _, p, d = sched.split(":")
                period, duty = int(p), int(d)
            except ValueError:
                raise ConfigError(
                    f"broadcast_schedule: expected intermittent:PERIOD:DUTY, got {sched!r}") from None
        elif sched != "constant":
            raise ConfigError(f"broadcast_schedule: unknown schedule {sched!r}")
        spec = self.broadcasters.strip()
        if not spec:
            return BroadcasterConfig()
        try:
            if spec.startswith("random:"):
                return BroadcasterConfig(random_count=int(spec[7:]), period=period, duty=duty)
            return BroadcasterConfig(ids=tuple(int(s) for s in spec.split(",")),
                                     period=period, duty=duty)
        except ValueError:
            raise ConfigError(f"broadcasters: cannot parse {spec!r}") from None

    # -- serialisation ---------------------------------------------------
    def to_dict(self) -> dict:
        return dataclasses.asdict(self)

    @classmethod
    def from_dict(cls, data: dict, base: Optional["RunManifest"] = None) -> "RunManifest":
        known = {f.name for f in fields(cls)}
        unknown = sorted(set(data) - known)
        if unknown:
            raise ConfigError(f"unknown key(s): {', '.join(unknown)}")
        merged = (base or cls()).to_dict()
        merged.update(data)
        return cls(**_coerce(merged))

    @classmethod
    def load(cls, path, base: Optional["RunManifest"] = None) -> "RunManifest":
        with open(path) as fh:
            data = yaml.safe_load(fh) or {}
        if not isinstance(data, dict):
            raise ConfigError(f"{path}: expected a mapping of keys to values")
        return cls.from_dict(data, base)

    def dump(self) -> str:
        return yaml.safe_dump(self.to_dict(), sort_keys=True)

    @property
    def p_invent(self) -> float:
        r = parse_ratio(self.ratio)
        return float(r / (r + 1))


_TYPES = {"rows": int, "cols": int, "density": float, "p_change": float, "y": float,
          "z": float, "iterations": int, "replicates": int, "seed": int, "ratio": str}


def _coerce(d: dict) -> dict:
    for key, typ in _TYPES.items():
        v = d[key]
        if isinstance(v, bool):
            raise ConfigError(f"{key}: got a boolean")
        try:
            if typ is int and isinstance(v, float) and not v.is_integer():
                raise ValueError
            if typ is str and not isinstance(v, str):
                v = format_ratio(parse_ratio(v))
            d[key] = typ(v)
        except (TypeError, ValueError):
            raise ConfigError(f"{key}: cannot interpret {v!r} as {typ.__name__}") from None
    if isinstance(d["net"], str):
        if d["net"].lower() not in ("on", "off", "true", "false"):
            raise ConfigError(f"net: expected on/off, got {d['net']!r}")
        d["net"] = d["net"].lower() in ("on", "true")
    for key in ("borders", "ratio_regions"):
        if isinstance(d[key], str):
            d[key] = [d[key]]
        d[key] = [str(s) for s in d[key]]
    if d["placement"] is not None:
        d["placement"] = [[int(r), int(c)] for r, c in d["placement"]]
    d["broadcasters"] = str(d["broadcasters"] or "")
    return d


# -- presets ---------------------------------------------------------------

def _m(**kw) -> RunManifest:
    return RunManifest(**kw)


PRESETS: dict[str, RunManifest] = {
    "f2_baseline": _m(need="f2"),
    "f1_baseline": _m(need="f1"),
    "two_needs": _m(need="both", y=1.0, z=1.0),
    "broadcast_0": _m(),
    "broadcast_1": _m(broadcasters="random:1"),
    "broadcast_5": _m(broadcasters="random:5"),
    "density_100": _m(density=1.0),
    "density_070": _m(density=0.7),
    "density_050": _m(density=0.5),
    "density_030": _m(density=0.3),
    "density_030_broadcast": _m(density=0.3, broadcasters="random:1"),
    "shape_square": _m(topology="bounded"),
    "shape_toroidal": _m(topology="toroidal"),
    "ratio_1_2": _m(ratio="1:2"),
    "ratio_1_1": _m(ratio="1:1"),
    "ratio_2_1": _m(ratio="2:1"),
    "ratio_4_1": _m(ratio="4:1"),
    "border_none": _m(),
    "border_permanent": _m(borders=["v,4,0,0,0,0"]),
    "border_eroding": _m(borders=["v,4,0,1,0,500"]),
    # the second border closes the torus seam so the two sides really are apart
    "fig8": _m(rows=7, cols=7, iterations=40, replicates=1, snapshot_every=4,
               ratio_regions=["cols=4-6,ratio=2:1"],
               borders=["v,3,0,1,4,40", "v,6,0,1,4,40"]),
    "drift_5x5": _m(rows=5, cols=5, iterations=200, replicates=200),
}
PRESETS["border_eroding_fig8"] = PRESETS["fig8"]

SWEEPS: dict[str, list[str]] = {
    "baselines": ["f1_baseline", "f2_baseline"],
    "broadcast_k": ["broadcast_0", "broadcast_1", "broadcast_5"],
    "density_sweep": ["density_100", "density_070", "density_050", "density_030",
                      "density_030_broadcast"],
    "shape_square_vs_toroidal": ["shape_square", "shape_toroidal"],
    "ratio_sweep": ["ratio_1_2", "ratio_1_1", "ratio_2_1", "ratio_4_1"],
    "border_sweep": ["border_none", "border_permanent", "border_eroding"],
}


def preset(name: str, **overrides) -> RunManifest:
    try:
        base = PRESETS[name]
    except KeyError:
        raise ConfigError(f"preset: unknown preset {name!r}") from None
    return RunManifest.from_dict(overrides, base) if overrides else base


# -- running -------------------------------------------------------------

def _run_one(args) -> RunLog:
    manifest, r, record_actions = args
    return run(manifest.sim_config(r), manifest.world_config(), manifest.border_list(),
               manifest.broadcaster_config(), snapshot_every=manifest.snapshot_every,
               record_actions=record_actions)


def run_replicates(manifest: RunManifest, workers: int = 1,
                   record_actions: bool = False) -> list[RunLog]:
    """Replicate ``r`` is seeded with ``manifest.seed + r``."""
    jobs = [(manifest, r, record_actions) for r in range(manifest.replicates)]
    if workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            return list(pool.map(_run_one, jobs, chunksize=max(1, len(jobs) // (4 * workers))))
    return [_run_one(j) for j in jobs]


def emit_snapshot(source) -> str:
    """Space-separated ActionId grid, one row per line, -1 for empty cells.

    ``source`` is a SimState or a grid (list of rows).
    """
    from .metrics import snapshot_grid
    grid = source if isinstance(source, list) else snapshot_grid(source)
    return "\n".join(" ".join(str(v) for v in row) for row in grid)


def _fmt(x: float) -> str:
    return f"{x:.6f}"


def write_run_csv(path, logs: list[RunLog], first_id: int = 0) -> None:
    with open(path, "w", newline="") as fh:
        fh.write("run_id,iteration,mean_fitness,diversity\n")
        for r, log in enumerate(logs, start=first_id):
            for f in log.frames:
                fh.write(f"{r},{f.iteration},{_fmt(f.mean_fitness)},{f.diversity}\n")


def write_aggregate_csv(path, agg: AggregateSeries) -> None:
    with open(path, "w", newline="") as fh:
        fh.write("iteration,mean_fitness_mean,mean_fitness_se,diversity_mean,"
                 "diversity_se,replicates\n")
        for i, t in enumerate(agg.iteration):
            fh.write(f"{t},{_fmt(agg.mean_fitness_mean[i])},{_fmt(agg.mean_fitness_se[i])},"
                     f"{_fmt(agg.diversity_mean[i])},{_fmt(agg.diversity_se[i])},"
                     f"{agg.replicates}\n")


def run_experiment(manifest: RunManifest, out_dir=None, workers: int = 1) -> Path:
    """Run every replicate and write results under ``out_dir``.

    Layout::

        manifest.yaml
        runs/run_000.csv ...       one per replicate
        aggregate.csv
        snapshots/run_000_t00004.txt ...   when snapshot_every is set
    """
    out = Path(out_dir or manifest.out_dir or default_out_dir())
    out.mkdir(parents=True, exist_ok=True)
    (out / "runs").mkdir(exist_ok=True)
    (out / "manifest.yaml").write_text(manifest.dump())
    logs = run_replicates(manifest, workers)
    for r, log in enumerate(logs):
        write_run_csv(out / "runs" / f"run_{r:03d}.csv", [log], first_id=r)
        if manifest.snapshot_every:
            snap = out / "snapshots"
            snap.mkdir(exist_ok=True)
            for f in log.frames:
                if f.grid is not None:
                    (snap / f"run_{r:03d}_t{f.iteration:05d}.txt").write_text(
                        emit_snapshot(f.grid) + "\n")
    write_aggregate_csv(out / "aggregate.csv", aggregate(logs))
    return out
