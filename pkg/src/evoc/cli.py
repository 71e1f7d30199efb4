"""Command-line entry point: ``evoc --preset f2_baseline --out-dir out``."""
from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Optional, Sequence

from .errors import ConfigError
from .experiment import PRESETS, SWEEPS, RunManifest, default_out_dir, preset, run_experiment

# flag dest -> manifest key, for flags that map one-to-one
_SCALAR_FLAGS = ("rows", "cols", "topology", "density", "ratio", "p_change", "need", "y", "z",
                 "iterations", "replicates", "seed", "broadcasters", "broadcast_schedule",
                 "net", "snapshot_every", "out_dir")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="evoc", description="Run EVOC cultural-evolution experiments.")
    p.add_argument("--preset", help="named preset or sweep; see --list-presets")
    p.add_argument("--list-presets", action="store_true")
    p.add_argument("--config", help="YAML/JSON manifest file; flags override its values")
    p.add_argument("--rows", type=int)
    p.add_argument("--cols", type=int)
    p.add_argument("--topology", choices=["toroidal", "bounded"])
    p.add_argument("--density", type=float)
    p.add_argument("--ratio", help="invention:imitation, e.g. 2:1")
    p.add_argument("--ratio-region", action="append", dest="ratio_regions",
                   help="per-region ratio, e.g. cols=4-6,ratio=2:1 (repeatable)")
    p.add_argument("--p-change", type=float, help="per-part change probability during invention")
    p.add_argument("--need", choices=["f1", "f2", "both"])
    p.add_argument("--y", type=float, help="weight of F1 when --need both")
    p.add_argument("--z", type=float, help="weight of F2 when --need both")
    p.add_argument("--iterations", type=int)
    p.add_argument("--replicates", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--broadcasters", help="random:K or comma-separated agent ids")
    p.add_argument("--broadcast-schedule", help="constant or intermittent:PERIOD:DUTY")
    p.add_argument("--border", action="append", dest="borders",
                   help="orientation,index,p_start,p_end,t_start,t_end (repeatable)")
    p.add_argument("--net", choices=["on", "off"])
    p.add_argument("--snapshot-every", type=int)
    p.add_argument("--out-dir")
    p.add_argument("--workers", type=int, default=1, help="processes for replicates")
    return p


def parse_manifest(argv: Sequence[str] = (), base: Optional[RunManifest] = None) -> RunManifest:
    """Defaults, then preset, then config file, then flags."""
    args = build_parser().parse_args(list(argv))
    return _manifest_from_args(args, base)


def _manifest_from_args(args, base: Optional[RunManifest] = None) -> RunManifest:
    if base is None:
        base = preset(args.preset) if args.preset and args.preset not in SWEEPS else RunManifest()
    if args.config:
        base = RunManifest.load(args.config, base)
    overrides = {k: getattr(args, k) for k in _SCALAR_FLAGS if getattr(args, k) is not None}
    for key in ("borders", "ratio_regions"):
        if getattr(args, key) is not None:
            overrides[key] = getattr(args, key)
    return RunManifest.from_dict(overrides, base) if overrides else base


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.list_presets:
        for name in PRESETS:
            print(name)
        for name, members in SWEEPS.items():
            print(f"{name}: {' '.join(members)}")
        return 0
    try:
        if args.preset in SWEEPS:
            root = Path(args.out_dir or default_out_dir())
            for name in SWEEPS[args.preset]:
                m = _manifest_from_args(args, preset(name))
                out = run_experiment(m, root / name, workers=args.workers)
                print(f"{name}: wrote {out}")
        else:
            m = _manifest_from_args(args)
            out = run_experiment(m, workers=args.workers)
            print(f"wrote {out}")
    except ConfigError as exc:
        print(f"evoc: error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"evoc: cannot write output: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
