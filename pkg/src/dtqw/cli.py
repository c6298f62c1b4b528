"""Command-line entry point.

Subcommands:

* ``run``    -- execute one scenario, by catalog name or from flags.
* ``sweep``  -- execute every scenario listed in a JSON config file.
* ``chiral`` -- dense-matrix symmetry report (all four built-in
  split-step parameter sets, or the set given by flags).
* ``verify`` -- run the oracle/invariant suite and print a result table.

Output directory resolution: ``--out`` flag, else the ``DTQW_OUT_DIR``
environment variable, else ``./runs``.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from pathlib import Path

from ._version import __version__
from .errors import WalkError
from .runner import (
    CATALOG,
    REPORT_HALF_WIDTH,
    WALK_CHOICES,
    build_scenario,
    catalog_scenario,
    run_scenario,
    run_sweep,
)
from .symmetry import chirality_report
from .verification import verify
from .walk import Homogeneous, Lattice, SplitStep


def _parse_initial(text: str):
    parts = text.split(",")
    if len(parts) != 4:
        raise argparse.ArgumentTypeError(
            "expected four comma-separated numbers: a_re,a_im,b_re,b_im"
        )
    try:
        return tuple(float(p) for p in parts)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _default_out() -> str:
    return os.environ.get("DTQW_OUT_DIR", "runs")


def _add_run_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--walk", choices=WALK_CHOICES, help="walk variant for ad-hoc runs")
    p.add_argument("--theta", type=float, help="coin angle (homogeneous walk)")
    p.add_argument("--theta1", type=float, help="first split-step angle")
    p.add_argument("--theta2-minus", type=float, dest="theta2_minus",
                   help="second split-step angle left of the interface")
    p.add_argument("--theta2-plus", type=float, dest="theta2_plus",
                   help="second split-step angle at and right of the interface")
    p.add_argument("--interface", type=int, default=None,
                   help="interface site for the split-step walk (default 0)")
    p.add_argument("--steps", type=int, help="number of steps")
    p.add_argument("--runs", type=int, help="disorder realizations to average")
    p.add_argument("--seed", type=int, help="master seed")
    p.add_argument("--initial", type=_parse_initial, metavar="a_re,a_im,b_re,b_im",
                   help="initial spin amplitudes (must be normalized)")
    p.add_argument("--half-width", type=int, dest="half_width",
                   help="lattice half-width (default: large enough for the run)")
    p.add_argument("--out", default=None, help="output directory")
    p.add_argument("--format", choices=["csv"], default="csv",
                   help="table format (csv only)")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dtqw",
        description="Discrete-time quantum walk simulator and measurement suite",
    )
    parser.add_argument("--version", action="version", version=f"dtqw {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="run one scenario")
    run_p.add_argument("scenario", nargs="?",
                       help=f"catalog scenario: {', '.join(sorted(CATALOG))}")
    _add_run_flags(run_p)

    sweep_p = sub.add_parser("sweep", help="run every scenario in a config file")
    sweep_p.add_argument("config", help="JSON file with a 'scenarios' list")
    sweep_p.add_argument("--out", default=None, help="output directory")
    sweep_p.add_argument("--format", choices=["csv"], default="csv")

    chiral_p = sub.add_parser("chiral", help="dense-matrix symmetry report")
    chiral_p.add_argument("--theta", type=float, help="coin walk angle")
    chiral_p.add_argument("--theta1", type=float)
    chiral_p.add_argument("--theta2-minus", type=float, dest="theta2_minus")
    chiral_p.add_argument("--theta2-plus", type=float, dest="theta2_plus")
    chiral_p.add_argument("--interface", type=int, default=0)
    chiral_p.add_argument("--half-width", type=int, dest="half_width",
                          default=REPORT_HALF_WIDTH)
    chiral_p.add_argument("--out", default=None,
                          help="also write the report into this directory")

    sub.add_parser("verify", help="run the oracle and invariant suite")
    return parser


def _cmd_run(args) -> int:
    overrides = dict(
        theta=args.theta,
        theta1=args.theta1,
        theta2_minus=args.theta2_minus,
        theta2_plus=args.theta2_plus,
        steps=args.steps,
        runs=args.runs,
        seed=args.seed,
        initial=args.initial,
        half_width=args.half_width,
    )
    if args.interface is not None:
        overrides["interface"] = args.interface
    if args.scenario is not None:
        scenario = catalog_scenario(args.scenario, **overrides)
    else:
        if args.walk is None:
            print("error: give a scenario name or --walk", file=sys.stderr)
            return 2
        kwargs = {k: v for k, v in overrides.items() if v is not None}
        kwargs.setdefault("seed", 0)
        scenario = build_scenario(args.walk, **kwargs)

    out_dir = args.out or _default_out()
    print(
        f"{scenario.name}: {scenario.runs} run(s) x {scenario.steps} steps "
        f"on {2 * scenario.half_width + 1} sites",
        file=sys.stderr,
    )
    artifacts = run_scenario(scenario, out_dir)
    for path in artifacts.paths():
        print(path)
    return 0


def _cmd_sweep(args) -> int:
    out_dir = args.out or _default_out()
    for artifacts in run_sweep(args.config, out_dir):
        for path in artifacts.paths():
            print(path)
    return 0


def _chiral_specs(args):
    if args.theta is not None:
        return [("homogeneous", Homogeneous(args.theta))]
    if args.theta1 is not None or args.theta2_minus is not None or args.theta2_plus is not None:
        missing = [
            name
            for name, v in (
                ("--theta1", args.theta1),
                ("--theta2-minus", args.theta2_minus),
                ("--theta2-plus", args.theta2_plus),
            )
            if v is None
        ]
        if missing:
            raise WalkError(f"chiral needs all three split-step angles; missing {', '.join(missing)}")
        return [
            (
                "split-step",
                SplitStep(args.theta1, args.theta2_minus, args.theta2_plus, args.interface),
            )
        ]
    # no angles given: report the four built-in split-step parameter sets
    labels = ("ss-a", "ss-b", "ss-c", "ss-d")
    params = (
        (math.pi / 2, -math.pi / 4, math.pi / 4),
        (math.pi / 2, -3 * math.pi / 4, 3 * math.pi / 4),
        (-3 * math.pi / 2, 5 * math.pi / 4, 3 * math.pi / 4),
        (-3 * math.pi / 2, -math.pi, math.pi),
    )
    return [(label, SplitStep(*p)) for label, p in zip(labels, params)]


def _cmd_chiral(args) -> int:
    lattice = Lattice(args.half_width)
    reports = []
    for label, spec in _chiral_specs(args):
        report = chirality_report(spec, lattice)
        report["label"] = label
        reports.append(report)
    doc = {"reports": reports}
    text = json.dumps(doc, sort_keys=True, indent=2)
    print(text)
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        (out / "chiral_report.json").write_text(text + "\n", encoding="utf-8")
    return 0


def _cmd_verify(_args) -> int:
    results = verify()
    width = max(len(r.name) for r in results)
    failed = 0
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        print(f"{r.name:<{width}}  {status}  {r.detail}")
        failed += 0 if r.passed else 1
    print(f"{len(results) - failed}/{len(results)} checks passed")
    return 1 if failed else 0


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    handlers = {
        "run": _cmd_run,
        "sweep": _cmd_sweep,
        "chiral": _cmd_chiral,
        "verify": _cmd_verify,
    }
    try:
        return handlers[args.command](args)
    except WalkError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
