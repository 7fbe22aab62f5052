"""Command-line front end.

Exit codes: 0 success, 2 usage error, 3 input parse error, 4 numerical
failure (dark point, fit failure, no valid zero-line samples).
"""
from __future__ import annotations

import argparse
import logging
import sys
import time
from pathlib import Path

import numpy as np

from . import __version__
from .compare import FAMILIES, compare_family
from .discord_ref import discord
from .landscape import AXES, GridSpec, QuantifierError, combined_quantifier, sweep, zero_line
from .protocol import DarkPointError, EvolutionParams
from .reports import (
    RunManifest,
    csv_text,
    digest,
    discord_text,
    landscape_csv,
    quantifier_text,
    shot_csv,
    shot_summary_text,
    zeroline_csv,
)
from .shots import ShotConfig, ShotFitError, estimate_visibility
from .states import PRESETS, StateError, assemble_density, format_state_config, load_state_config, preset

log = logging.getLogger("discord_witness")

EXIT_USAGE = 2
EXIT_PARSE = 3
EXIT_NUMERIC = 4


class UsageError(Exception):
    pass


def _pair(text: str, kind=float, sep=","):
    parts = text.split(sep)
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected two values separated by {sep!r}, got {text!r}")
    try:
        return tuple(kind(p) for p in parts)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad value in {text!r}") from None


def _axes(text: str):
    a, b = _pair(text, str)
    aliases = {"phia": "phiA", "phib": "phiB"}
    a, b = aliases.get(a.lower(), a), aliases.get(b.lower(), b)
    for ax in (a, b):
        if ax not in AXES:
            raise argparse.ArgumentTypeError(f"unknown axis {ax!r}; choose from {', '.join(AXES)}")
    return a, b


def _add_state_args(p):
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--preset", choices=sorted(PRESETS), help="named example state")
    src.add_argument("--state", type=Path, help="state config file")
    p.add_argument("--theta", type=float, help="preset parameter (three, rho_theta)")
    p.add_argument("--phi2", type=float, help="preset parameter (phase)")
    p.add_argument("--phi", type=float, help="preset parameter (fig6a)")


def _resolve_state(args):
    if args.state is not None:
        return load_state_config(args.state)
    params = {k: getattr(args, k) for k in ("theta", "phi2", "phi") if getattr(args, k) is not None}
    return preset(args.preset, **params)


def _state_record(state):
    return format_state_config(state)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", type=Path, help="output file (default: stdout)")
    common.add_argument("--threads", type=int, default=1, help="worker threads for grid/shot evaluation")
    common.add_argument("--quiet", action="store_true", help="suppress progress messages")

    parser = argparse.ArgumentParser(prog="discord-witness", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("landscape", parents=[common], help="visibility over a 2-D parameter grid")
    _add_state_args(p)
    p.add_argument("--axes", type=_axes, default=("alpha", "beta"))
    p.add_argument("--steps", type=lambda s: _pair(s, int), default=(256, 256))
    p.add_argument("--range1", type=lambda s: _pair(s, float, ":"), default=(0.0, 2 * np.pi))
    p.add_argument("--range2", type=lambda s: _pair(s, float, ":"), default=(0.0, 2 * np.pi))
    for name in AXES:
        p.add_argument(f"--{name}", type=float, default=0.0, help=f"fixed {name} (radians)")

    p = sub.add_parser("zeroline", parents=[common], help="zero-visibility line over beta")
    _add_state_args(p)
    _add_line_args(p)

    p = sub.add_parser("quantify", parents=[common], help="zero line plus discord quantifiers")
    _add_state_args(p)
    _add_line_args(p)
    p.add_argument("--summary", type=Path, help="also write the key=value summary here")

    p = sub.add_parser("discord", parents=[common], help="reference entropic discord")
    _add_state_args(p)
    p.add_argument("--measured", choices=("A", "B"), default="A")

    p = sub.add_parser("compare", parents=[common], help="discord vs quantifiers along a preset family")
    p.add_argument("--family", choices=sorted(FAMILIES), required=True)
    p.add_argument("--from", dest="start", type=float, default=0.0)
    p.add_argument("--to", dest="stop", type=float, default=np.pi)
    p.add_argument("--points", type=int, default=25)
    p.add_argument("--measured", choices=("A", "B"), default="A")
    p.add_argument("--samples", type=int, default=256, help="beta samples per zero line")

    p = sub.add_parser("shots", parents=[common], help="Monte-Carlo coincidence experiment")
    _add_state_args(p)
    p.add_argument("--alpha", type=float, default=np.pi)
    p.add_argument("--phiA", type=float, default=0.0)
    p.add_argument("--beta", type=float, default=np.pi)
    p.add_argument("--phiB", type=float, default=0.0)
    p.add_argument("--trials", type=int, default=10**5, help="trials per detector phase")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--points", type=int, default=24, help="uniform detector phases on [0, 2pi)")
    p.add_argument("--partitions", type=int, default=1, help="seed-derived substreams per phase point")
    p.add_argument("--summary", type=Path, help="also write the key=value summary here")

    sub.add_parser("preset-list", parents=[common], help="list the named states")
    return parser


def _add_line_args(p):
    p.add_argument("--samples", type=int, default=256, help="beta samples on [0, 2pi)")
    p.add_argument("--phiB", type=float, default=0.0)
    p.add_argument("--mode", choices=("real", "complex"), default="complex")
    p.add_argument("--method", choices=("analytic", "numeric"), default="analytic")


def _emit(text: str, path: Path | None, outputs: list):
    if path is None:
        sys.stdout.write(text)
        return
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="\n") as fh:
        fh.write(text)
    outputs.append(str(path))


def _run(args, outputs: list) -> dict:
    """Execute one command; returns the resolved parameters for the manifest."""
    cmd = args.command
    if args.threads < 1:
        raise UsageError("--threads must be >= 1")
    if cmd == "preset-list":
        _emit("".join(f"{k}: {v}\n" for k, v in PRESETS.items()), args.out, outputs)
        return {}
    if cmd == "compare":
        if args.points < 2:
            raise UsageError("--points must be >= 2")
        values = np.linspace(args.start, args.stop, args.points)
        rows = compare_family(args.family, values, args.measured, args.samples)
        text = csv_text(
            ["parameter", "discord", "delta2_alpha", "delta2_phi", "sum"],
            ((r.parameter, r.discord, r.delta2_alpha, r.delta2_phi, r.total) for r in rows),
            f"family={args.family} measured={args.measured}",
        )
        _emit(text, args.out, outputs)
        return {"family": args.family, "values": values.tolist(), "measured": args.measured, "samples": args.samples}

    state = _resolve_state(args)
    params = {"state": _state_record(state)}
    if cmd == "landscape":
        steps = args.steps
        if min(steps) < 2:
            raise UsageError("--steps values must be >= 2")
        fixed = {name: getattr(args, name) for name in AXES if name not in args.axes}
        grid = GridSpec(args.axes[0], args.axes[1], args.range1, args.range2, steps[0], steps[1], fixed)
        log.info("sweeping %dx%d grid over %s", steps[0], steps[1], ",".join(args.axes))
        _emit(landscape_csv(sweep(state, grid, args.threads)), args.out, outputs)
        params.update(axes=list(args.axes), steps=list(steps), range1=list(args.range1),
                      range2=list(args.range2), fixed=fixed)
    elif cmd in ("zeroline", "quantify"):
        if args.samples < 16:
            raise UsageError("--samples must be >= 16")
        line = zero_line(state, args.samples, args.phiB, args.mode, args.method)
        params.update(samples=args.samples, phiB=args.phiB, mode=args.mode, method=args.method)
        if cmd == "zeroline":
            _emit(zeroline_csv(line), args.out, outputs)
        else:
            result = combined_quantifier(line)
            if args.out is not None:
                _emit(zeroline_csv(line), args.out, outputs)
            summary = quantifier_text(result)
            if args.summary is not None:
                _emit(summary, args.summary, outputs)
            sys.stdout.write(summary)
    elif cmd == "discord":
        _emit(discord_text(discord(assemble_density(state), args.measured)), args.out, outputs)
        params.update(measured=args.measured)
    elif cmd == "shots":
        if args.trials < 1:
            raise UsageError("--trials must be >= 1")
        if args.points < 3:
            raise UsageError("--points must be >= 3")
        if not 0 <= args.seed < 2**64:
            raise UsageError("--seed must fit in 64 unsigned bits")
        if args.partitions < 1:
            raise UsageError("--partitions must be >= 1")
        ev = EvolutionParams(args.alpha, args.phiA, args.beta, args.phiB)
        phases = tuple(np.linspace(0.0, 2 * np.pi, args.points, endpoint=False))
        cfg = ShotConfig(state, ev, args.trials, args.seed, phases, args.partitions)
        est = estimate_visibility(cfg, threads=args.threads)
        _emit(shot_csv(est), args.out, outputs)
        summary = shot_summary_text(est)
        if args.summary is not None:
            _emit(summary, args.summary, outputs)
        if args.out is not None:
            sys.stdout.write(summary)
        params.update(alpha=args.alpha, phiA=args.phiA, beta=args.beta, phiB=args.phiB, trials=args.trials,
                      seed=args.seed, points=args.points, partitions=args.partitions)
    return params


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.WARNING if args.quiet else logging.INFO, format="%(message)s")
    outputs: list = []
    start = time.perf_counter()
    try:
        params = _run(args, outputs)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"{parser.prog} {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (StateError, OSError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (DarkPointError, ShotFitError, QuantifierError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    if args.out is not None:
        manifest = RunManifest(
            command=args.command,
            parameters=params,
            input_digest=digest({"command": args.command, **params}),
            outputs=outputs,
            version=__version__,
            duration_s=round(time.perf_counter() - start, 6),
        )
        manifest_path = args.out.with_name(args.out.name + ".manifest.json")
        manifest_path.write_text(manifest.to_json())
        log.info("wrote %s", ", ".join(outputs + [str(manifest_path)]))
    return 0


if __name__ == "__main__":
    sys.exit(main())
