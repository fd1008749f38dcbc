"""Command-line front end.

Subcommands: ``bound`` (report for an observable file + state file),
``sweep`` (CSV over a theta grid), ``saturate`` (refined saturation
angles), ``verify`` (randomized campaign).  Exit codes: 0 success,
1 verification found a violation, 2 invalid input.
"""

import argparse
import json
import sys

from . import io as sio
from .bounds import BoundReport, ObservableSet, bound_report
from .errors import SumUncertError
from .families import family_names
from .sweeps import (
    TWO_PI,
    SweepSpec,
    VerifyConfig,
    find_saturation,
    random_verify,
    sweep,
)

DEG_TO_RAD = 0.017453292519943295  # pi / 180


def _fmt(x: float) -> str:
    return sio.format_float(x)


def render_report(report: BoundReport) -> str:
    """Deterministic plain-text rendering of a BoundReport."""
    lines = [
        f"observables: {report.n}",
        f"dimension: {report.dim}",
        f"state: {report.state_kind}"
        + (" (pure)" if report.state_kind == "mixed" and report.state_is_pure else ""),
        f"lhs_variance_sum: {_fmt(report.lhs_variance_sum)}",
        f"lhs_stddev_sum: {_fmt(report.lhs_stddev_sum)}",
    ]
    if report.product_lhs is not None:
        lines.append(f"product_lhs: {_fmt(report.product_lhs)}")
    lines.append("bounds:")
    for name, value in report.bounds.items():
        lines.append(f"  {name}: {_fmt(value)}")
    lines.append("gaps:")
    for name, value in report.gaps.items():
        lines.append(f"  {name}: {_fmt(value)}")
    if report.orderings:
        lines.append("orderings:")
        for name, slack in report.orderings.items():
            verdict = "ok" if slack >= -1e-9 else "VIOLATED"
            lines.append(f"  {name}: {verdict} (slack {_fmt(slack)})")
    return "\n".join(lines) + "\n"


def _cmd_bound(args) -> int:
    observables, _ = sio.load_observables(args.observables)
    state = sio.load_state(args.state)
    report = bound_report(ObservableSet(observables), state)
    text = render_report(report)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def _cmd_sweep(args) -> int:
    spec = SweepSpec(family=args.family, kind=args.kind, points=args.points)
    result = sweep(spec)
    if args.out == "-":
        sio.write_sweep_csv(sys.stdout, result)
    else:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            sio.write_sweep_csv(fh, result)
    return 0


def _cmd_saturate(args) -> int:
    if args.range is not None:
        lo, hi = args.range
        if args.degrees:
            lo *= DEG_TO_RAD
            hi *= DEG_TO_RAD
        theta_range = (lo, hi)
    else:
        theta_range = (0.0, TWO_PI)
    angles = find_saturation(args.family, args.kind, args.bound, theta_range)
    for theta in angles:
        sys.stdout.write(f"{theta:.9f}\n")
    return 0


def _parse_dims(text: str) -> tuple[int, ...]:
    try:
        dims = tuple(int(part) for part in text.split(",") if part.strip() != "")
    except ValueError:
        raise ValueError(f"--dims expects comma-separated integers, got {text!r}")
    if not dims:
        raise ValueError("--dims must name at least one dimension")
    return dims


def _parse_n_range(text: str) -> tuple[int, int]:
    try:
        lo, hi = text.split("..")
        return int(lo), int(hi)
    except ValueError:
        raise ValueError(f"--n-obs expects LO..HI, got {text!r}")


def render_summary(summary, cfg: VerifyConfig) -> str:
    """Deterministic plain-text campaign summary (elapsed time omitted
    so identical arguments give byte-identical output)."""
    lines = [
        f"trials: {cfg.trials}",
        f"dims: {','.join(str(d) for d in cfg.dims)}",
        f"n range: {cfg.n_range[0]}..{cfg.n_range[1]}",
        f"seed: {cfg.seed}",
        f"tolerance: {_fmt(cfg.tolerance)}",
        f"mixed fraction: {_fmt(cfg.state_mix)}",
        f"instances evaluated: {summary.trials_run}",
        f"violations: {len(summary.violations)}",
    ]
    for v in summary.violations:
        lines.append(f"  {v.prop} slack={_fmt(v.slack)} seed={v.seed} {v.descriptor}")
    lines.append("min slack per property:")
    for prop, slack in summary.min_slack.items():
        lines.append(f"  {prop}: {_fmt(slack)}")
    return "\n".join(lines) + "\n"


def _cmd_verify(args) -> int:
    try:
        dims = _parse_dims(args.dims)
        n_range = _parse_n_range(args.n_obs)
        cfg = VerifyConfig(
            trials=args.trials,
            dims=dims,
            n_range=n_range,
            seed=args.seed,
            tolerance=args.tolerance,
            state_mix=args.mixed_frac,
        )
    except ValueError as exc:
        raise SumUncertError(str(exc)) from None
    summary = random_verify(cfg)
    sys.stdout.write(render_summary(summary, cfg))
    return 1 if summary.violations else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sumuncert",
        description="Lower bounds on sums of variances/deviations of N observables",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_bound = sub.add_parser("bound", help="evaluate every bound for files")
    p_bound.add_argument("--observables", required=True, help="observable JSON file")
    p_bound.add_argument("--state", required=True, help="state JSON file")
    p_bound.add_argument("--out", help="write report here instead of stdout")
    p_bound.set_defaults(fn=_cmd_bound)

    p_sweep = sub.add_parser("sweep", help="CSV of lhs/bounds over a theta grid")
    p_sweep.add_argument("--family", required=True, choices=family_names())
    p_sweep.add_argument("--kind", required=True, choices=("variance", "stddev"))
    p_sweep.add_argument("--points", type=int, default=1000)
    p_sweep.add_argument("--out", required=True, help="output CSV path ('-' = stdout)")
    p_sweep.set_defaults(fn=_cmd_sweep)

    p_sat = sub.add_parser("saturate", help="angles where the bound is attained")
    p_sat.add_argument("--family", required=True, choices=family_names())
    p_sat.add_argument("--kind", required=True, choices=("variance", "stddev"))
    p_sat.add_argument("--bound", required=True, choices=("cb1", "tb1", "cb3", "tb2"))
    p_sat.add_argument("--range", nargs=2, type=float, metavar=("LO", "HI"))
    p_sat.add_argument(
        "--degrees", action="store_true", help="interpret --range in degrees"
    )
    p_sat.set_defaults(fn=_cmd_saturate)

    p_verify = sub.add_parser("verify", help="randomized inequality campaign")
    p_verify.add_argument("--trials", type=int, default=10000)
    p_verify.add_argument("--seed", type=int, default=42)
    p_verify.add_argument("--dims", default="2,3,4,8")
    p_verify.add_argument("--n-obs", dest="n_obs", default="2..6")
    p_verify.add_argument("--tolerance", type=float, default=1e-9)
    p_verify.add_argument("--mixed-frac", dest="mixed_frac", type=float, default=0.3)
    p_verify.set_defaults(fn=_cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (SumUncertError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except json.JSONDecodeError as exc:
        print(f"error: invalid JSON: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def run():
    """Console-script entry point."""
    raise SystemExit(main())
