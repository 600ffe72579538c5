"""
@fileoverview This module provides the command-line entry point: it loads the
              environment, parses subcommand arguments into a RunConfig,
              runs the command graph and maps errors to exit codes.
@filepath app.py
"""

import argparse
import logging
import os
import sys
from typing import List, Optional

from dotenv import load_dotenv
from pydantic import ValidationError

from mrfcopula.classes.errors import ErrorCode, MRFError, ValidationFailure
from mrfcopula.classes.portfolio.types.enums import Command, OutputFormat, SampleKind
from mrfcopula.classes.run_state import RunConfig
from mrfcopula.graph import Graph
from mrfcopula.utils.utils import configure_logging, error_document

logger = logging.getLogger(__name__)


def _int_list(text: str) -> List[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _float_list(text: str) -> List[float]:
    try:
        return [float(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def _ugrid(text: str):
    try:
        start, stop, steps = text.split(":")
        return float(start), float(stop), int(steps)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a:b:steps, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--model", required=True, help="Model JSON file")
    common.add_argument("--output", default=None, help="Artifact path (default: stdout)")
    common.add_argument("--format", choices=[f.value for f in OutputFormat], default=None)
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("--draws", type=int, default=None)
    common.add_argument("--threads", type=int, default=None)
    common.add_argument("--hyp-tol", type=float, default=None, help="Hypergeometric series tolerance")
    common.add_argument("--mass-tol", type=float, default=None, help="Gamma-convolution mass tolerance")
    common.add_argument("--quad-tol", type=float, default=None, help="Quadrature tolerance (>= 1e-10)")
    common.add_argument("--log-level", default=None, help="Logging level for stderr diagnostics")

    parser = argparse.ArgumentParser(prog="mrfcopula",
                                     description="MRF-Clayton copula computations.")
    commands = parser.add_subparsers(dest="command", required=True)

    commands.add_parser(Command.VALIDATE.value, parents=[common], help="Model diagnostics")

    evaluate = commands.add_parser(Command.EVAL.value, parents=[common], help="Copula cdf at a point")
    evaluate.add_argument("--point", type=_float_list, required=True)

    sample = commands.add_parser(Command.SAMPLE.value, parents=[common], help="Draw a sample batch")
    sample.add_argument("--kind", choices=[k.value for k in SampleKind], default=SampleKind.UNIFORMS.value)

    spearman = commands.add_parser(Command.SPEARMAN.value, parents=[common], help="Spearman's rho of a pair")
    spearman.add_argument("--pair", type=_int_list, required=True)
    spearman.add_argument("--numeric", action="store_true")

    simdefault = commands.add_parser(Command.SIMDEFAULT.value, parents=[common],
                                     help="Probability of simultaneous default")
    simdefault.add_argument("--subset", type=_int_list, required=True)
    simdefault.add_argument("--mc", action="store_true")

    taildep = commands.add_parser(Command.TAILDEP.value, parents=[common], help="Tail-dependence indices")
    taildep.add_argument("--pair", type=_int_list, required=True)

    mdp_path = commands.add_parser(Command.MDP_PATH.value, parents=[common], help="Path of maximal dependence")
    mdp_path.add_argument("--pair", type=_int_list, required=True)
    mdp_path.add_argument("--ugrid", type=_ugrid, required=True)
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    """Translate parsed arguments into a RunConfig; unset options keep the environment defaults."""
    command = Command(args.command)
    fields = {
        "command": command,
        "model_path": args.model,
        "output_path": args.output,
        "output_format": args.format or (OutputFormat.JSON if command is Command.TAILDEP else OutputFormat.CSV),
        "seed": args.seed,
        "draws": args.draws,
        "threads": args.threads,
        "hyp_tolerance": args.hyp_tol,
        "mass_tolerance": args.mass_tol,
        "quad_tolerance": args.quad_tol,
        "point": getattr(args, "point", None),
        "pair": getattr(args, "pair", None),
        "subset": getattr(args, "subset", None),
        "sample_kind": getattr(args, "kind", None),
        "numeric": getattr(args, "numeric", False),
        "monte_carlo": getattr(args, "mc", False),
        "ugrid": getattr(args, "ugrid", None),
    }
    return RunConfig(**{name: value for name, value in fields.items() if value is not None})


def main(argv: Optional[List[str]] = None) -> int:
    load_dotenv('.env')
    args = build_parser().parse_args(argv)
    configure_logging(args.log_level or os.getenv("MRF_LOG_LEVEL") or "WARNING")
    logger.debug("🔧 [INFO] Environment variables loaded.")

    try:
        try:
            config = config_from_args(args)
        except ValidationError as e:
            raise ValidationFailure(ErrorCode.INVALID_CONFIG, "invalid arguments",
                                    errors=[err["msg"] for err in e.errors()]) from e
        Graph(config).run()
    except MRFError as e:
        logger.error(f"🔥 [ERROR] {e}")
        sys.stderr.write(error_document(e) + "\n")
        return e.exit_code
    except ValidationError as e:
        failure = ValidationFailure(ErrorCode.INVALID_CONFIG, "invalid input",
                                    errors=[err["msg"] for err in e.errors()])
        sys.stderr.write(error_document(failure) + "\n")
        return failure.exit_code
    return 0


if __name__ == "__main__":
    sys.exit(main())
