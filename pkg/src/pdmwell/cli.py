"""Command-line interface.

Subcommands
-----------
eigenstate   sample eigenfunctions and densities onto a grid
measures     entropy/Fisher/disequilibrium/length summary per state
sweep        complexities versus the deformation parameter
figure       the data series behind one of the four report figures,
             plus a rendered PNG next to the output file
verify       run the self-verification suite

Exit codes: 0 success, 1 verification failure, 2 invalid configuration,
3 numerical non-convergence (or non-finite output).
"""

from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path

from .deformed import Space
from .errors import InvalidConfig, NonConvergence, NonFinite, PdmWellError
from .report import (
    RunConfig,
    eigenstate_table,
    entropy_profile_table,
    figure_table,
    measures_table,
    sweep_table,
    write_table,
)
from .verify import run_verification

_SPACES = {"x": Space.POSITION, "k": Space.WAVEVECTOR, "eta": Space.DEFORMED_ETA}


def _int_list(text: str) -> list[int]:
    try:
        return [int(v) for v in text.split(",") if v != ""]
    except ValueError as exc:
        raise InvalidConfig(f"bad integer list {text!r}") from exc


def _float_list(text: str) -> list[float]:
    try:
        return [float(v) for v in text.split(",") if v != ""]
    except ValueError as exc:
        raise InvalidConfig(f"bad float list {text!r}") from exc


def _space_list(text: str) -> list[Space]:
    out = []
    for token in text.split(","):
        token = token.strip()
        if token not in _SPACES:
            raise InvalidConfig(f"unknown space {token!r} (expected x, k or eta)")
        out.append(_SPACES[token])
    return out


def _gamma_range(text: str) -> list[float]:
    """Parse MIN:MAX:STEPS into an inclusive linspace."""
    parts = text.split(":")
    if len(parts) != 3:
        raise InvalidConfig(f"bad range {text!r}, expected MIN:MAX:STEPS")
    try:
        lo, hi, steps = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError as exc:
        raise InvalidConfig(f"bad range {text!r}") from exc
    if steps < 2 or not lo < hi:
        raise InvalidConfig(f"bad range {text!r}")
    step = (hi - lo) / (steps - 1)
    return [lo + i * step for i in range(steps)]


def _add_common(sub: argparse.ArgumentParser, spaces: str = "x") -> None:
    sub.add_argument("--n", default="1,2,3", metavar="LIST",
                     help="comma-separated quantum numbers (default 1,2,3)")
    sub.add_argument("--gamma-a", default="0,0.4,0.8", metavar="LIST",
                     help="comma-separated deformations in (-1,1) (default 0,0.4,0.8)")
    sub.add_argument("--space", default=spaces, metavar="LIST",
                     help=f"comma-separated subset of x,k,eta (default {spaces})")
    sub.add_argument("--grid", type=int, default=1001, metavar="N",
                     help="grid points per sampled curve (default 1001)")
    sub.add_argument("--format", choices=("csv", "json"), default="csv")
    sub.add_argument("--out", type=Path, default=None, metavar="PATH",
                     help="output file (stdout when omitted)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pdmwell",
        description="Eigenstates, information measures and complexities of a "
                    "position-dependent-mass particle in an infinite well "
                    "(natural units: x in a, k in 1/a, E in eps0).",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eigenstate", help="sample eigenfunctions and densities")
    _add_common(p, spaces="x")

    p = sub.add_parser("measures", help="information measures per state")
    _add_common(p, spaces="x,k")
    p.add_argument("--entropy-profile", action="store_true",
                   help="emit pointwise entropy densities instead of the summary")

    p = sub.add_parser("sweep", help="complexities versus deformation")
    _add_common(p, spaces="x,k")
    p.add_argument("--gamma-a-range", default=None, metavar="MIN:MAX:STEPS",
                   help="inclusive linspace overriding --gamma-a")
    p.add_argument("--quantity", default="ccr,cfs,clmc",
                   help="kept for schema documentation; all three are emitted")

    p = sub.add_parser("figure", help="data series behind one report figure")
    _add_common(p, spaces="x,k")
    p.add_argument("--id", type=int, required=True, dest="figure_id", choices=(1, 2, 3, 4))
    p.add_argument("--no-plot", action="store_true",
                   help="skip rendering the PNG next to the output file")

    p = sub.add_parser("verify", help="run the self-verification suite")
    p.add_argument("--tol", type=float, default=1e-6)
    p.add_argument("--quick", action="store_true",
                   help="trimmed grids; for smoke runs only")
    return parser


def _config_from(args: argparse.Namespace) -> RunConfig:
    gamma = _float_list(args.gamma_a)
    if getattr(args, "gamma_a_range", None):
        gamma = _gamma_range(args.gamma_a_range)
    return RunConfig(
        command=args.command,
        n_list=_int_list(args.n),
        gamma_a_list=gamma,
        grid_points=args.grid,
        space_list=_space_list(args.space),
        format=args.format,
        output_path=args.out,
        figure_id=getattr(args, "figure_id", None),
        entropy_profile=getattr(args, "entropy_profile", False),
        render_plot=not getattr(args, "no_plot", False),
    )


def _run(args: argparse.Namespace) -> int:
    if args.command == "verify":
        report = run_verification(tol=args.tol, quick=args.quick)
        for line in report.lines():
            print(line)
        return 0 if report.ok else 1

    cfg = _config_from(args)
    if cfg.command == "eigenstate":
        table = eigenstate_table(cfg)
    elif cfg.command == "measures":
        table = entropy_profile_table(cfg) if cfg.entropy_profile else measures_table(cfg)
    elif cfg.command == "sweep":
        table = sweep_table(cfg)
    else:
        table = figure_table(cfg)

    text = write_table(table, cfg)
    if cfg.output_path is None:
        sys.stdout.write(text)
    else:
        print(f"wrote {cfg.output_path}")
        if cfg.command == "figure" and cfg.render_plot:
            from .figures import render_figure

            png = Path(cfg.output_path).with_suffix(".png")
            render_figure(cfg.figure_id, table, png)
            print(f"wrote {png}")
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _run(args)
    except InvalidConfig as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (NonConvergence, NonFinite) as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return 3
    except PdmWellError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
