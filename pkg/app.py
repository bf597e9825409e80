"""
Main application entry point for lpp_two_time.
Command-line interface: python app.py <command> [options].
"""

import argparse
import sys
from fractions import Fraction
from typing import List, Optional

from pydantic import ValidationError

from config_manager import get_section
from domain.exceptions import ParameterDomainError
from domain.objects import NumericOverrides, RunConfig
from runner import CommandRunner
from utils.logger import get_logger, setup_logging

logger = get_logger(__name__)


def rational(text: str) -> str:
    """q as given ("1/2" or "0.5"); validated later by the command."""
    try:
        Fraction(text)
    except (ValueError, ZeroDivisionError) as e:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from e
    return text


def float_list(text: str) -> List[float]:
    try:
        return [float(part) for part in text.split(",") if part.strip()]
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from e


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", help="artifact path (default: $LPP_OUTPUT_DIR/<command>.*)")
    common.add_argument("--seed", type=int, default=20240101)
    common.add_argument("--threads", type=int, help="worker pool size")
    common.add_argument("--grid-L", type=float, dest="grid_L")
    common.add_argument("--nodes", type=int, help="quadrature nodes per half-line")
    common.add_argument("--radius", type=float, help="u-contour radius")
    common.add_argument("--u-nodes", type=int, dest="u_nodes")
    common.add_argument("--delta-margin", type=float, dest="delta_margin")
    common.add_argument("--log-level", default=None)

    parser = argparse.ArgumentParser(prog="lpp_two_time",
                                     description="Two-time distribution of geometric last-passage percolation")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", parents=[common], help="sample H_T(eta, t)")
    p.add_argument("--q", type=rational, required=True)
    p.add_argument("--T", type=float, required=True)
    p.add_argument("--t", type=float, default=1.0)
    p.add_argument("--eta", type=float, default=0.0)
    p.add_argument("--samples", type=int)

    p = sub.add_parser("mc-two-time", parents=[common], help="empirical joint CDF")
    p.add_argument("--q", type=rational, required=True)
    p.add_argument("--T", type=float, required=True)
    p.add_argument("--t1", type=float, default=1.0)
    p.add_argument("--t2", type=float, default=2.0)
    p.add_argument("--eta1", type=float, default=0.0)
    p.add_argument("--eta2", type=float, default=0.0)
    p.add_argument("--xi1-values", type=float_list, dest="xi1_values", default=[0.0])
    p.add_argument("--xi2-values", type=float_list, dest="xi2_values", default=[0.0])
    p.add_argument("--samples", type=int)

    p = sub.add_parser("f2", parents=[common], help="Tracy-Widom GUE distribution")
    p.add_argument("--xi", type=float, required=True)

    p = sub.add_parser("twotime", parents=[common], help="two-time distribution")
    p.add_argument("--xi1", type=float, default=0.0)
    p.add_argument("--eta1", type=float, default=0.0)
    p.add_argument("--xi2", type=float, default=0.0)
    p.add_argument("--eta2", type=float, default=0.0)
    p.add_argument("--alpha", type=float, default=1.0)
    p.add_argument("--form", choices=["K", "Q"], default="K")
    p.add_argument("--sweep", action="store_true", help="evaluate on the xi1 x xi2 grid")
    p.add_argument("--xi1-values", type=float_list, dest="xi1_values")
    p.add_argument("--xi2-values", type=float_list, dest="xi2_values")

    p = sub.add_parser("finite", parents=[common], help="exact P(a, A) at finite sizes")
    p.add_argument("--q", type=rational, required=True)
    for name in ("m", "n", "M", "N", "a", "A"):
        p.add_argument(f"--{name}", type=int, required=True)

    p = sub.add_parser("verify", parents=[common], help="run acceptance suites")
    p.add_argument("suites", nargs="*",
                   help="any of identities, marginals, duality, finite, mc (default: all)")
    p.add_argument("--samples", type=int)
    return parser


RUN_KEYS = {"command", "output", "seed", "threads", "grid_L", "nodes", "radius", "u_nodes",
            "delta_margin", "log_level"}


def to_run_config(args: argparse.Namespace) -> RunConfig:
    overrides = NumericOverrides(grid_L=args.grid_L, nodes=args.nodes, radius=args.radius,
                                 u_nodes=args.u_nodes, delta_margin=args.delta_margin)
    params = {k: v for k, v in vars(args).items() if k not in RUN_KEYS and v is not None}
    return RunConfig(command=args.command, params=params, output=args.output, seed=args.seed,
                     threads=args.threads, overrides=overrides)


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging_section = get_section("logging")
    setup_logging(args.log_level or logging_section.level, logging_section.file,
                  logging_section.structured, logging_section.colored)
    try:
        config = to_run_config(args)
    except ValidationError as e:
        logger.error(f"Invalid options: {e}")
        print(f"error: {e.errors()[0]['msg']}")
        return ParameterDomainError.exit_code

    code, line = CommandRunner(config).run()
    print(line)
    return code


if __name__ == "__main__":
    sys.exit(main())
