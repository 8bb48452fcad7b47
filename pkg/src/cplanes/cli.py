"""Command-line interface for cplanes."""

import argparse
import sys
from collections.abc import Callable
from pathlib import Path
from typing import Any

from cplanes import codec
from cplanes.config import Config
from cplanes.core_seq import L1Functional
from cplanes.errors import CPlanesError, MalformedInputError, NotOneComplementedError
from cplanes.logger import setup_logger

type Handler = Callable[[argparse.Namespace, Config], dict[str, Any]]


def _positive_int(raw: str) -> int:
    value = int(raw)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {raw}")
    return value


def parse_args(argv: list[str] | None = None) -> argparse.Namespace:
    """Parse command-line arguments.

    Args:
        argv: Command-line arguments. If None, uses sys.argv.

    Returns:
        Parsed arguments.
    """
    from . import __version__

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "-v",
        "--verbose",
        action="store_true",
        help="Enable verbose output (DEBUG level)",
    )
    common.add_argument(
        "-c",
        "--config",
        type=Path,
        metavar="PATH",
        help="Path to configuration file (default: ~/.config/cplanes/config.toml)",
    )

    with_f = argparse.ArgumentParser(add_help=False, parents=[common])
    with_f.add_argument(
        "--f", dest="f", type=Path, required=True, metavar="FILE", help="Functional f"
    )
    with_f.add_argument(
        "--normalize",
        action="store_true",
        help="Divide f by its l1 norm instead of rejecting it",
    )

    parser = argparse.ArgumentParser(
        prog="cplanes",
        description="Projections, isometries and duality of hyperplanes of c",
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument(
        "--version",
        action="version",
        version=f"%(prog)s {__version__}",
    )
    subparsers = parser.add_subparsers(dest="command", help="Available commands")

    subparsers.add_parser(
        "classify", parents=[with_f], help="Isometric class of W_f"
    )
    subparsers.add_parser(
        "pconst", parents=[with_f], help="Projection constant of W_f"
    )

    minproj = subparsers.add_parser(
        "minproj", parents=[with_f], help="Optimal projection onto W_f"
    )
    minproj.add_argument(
        "--N", dest="n", type=_positive_int, metavar="K", help="Length of z^N"
    )

    apply = subparsers.add_parser(
        "apply", parents=[with_f], help="Apply P_z(x) = x - f(x) z"
    )
    apply.add_argument("--z", type=Path, required=True, metavar="FILE")
    apply.add_argument("--x", type=Path, required=True, metavar="FILE")

    isometry = subparsers.add_parser(
        "isometry", parents=[with_f], help="Isometry between W_f and c or c0"
    )
    isometry.add_argument("--x", type=Path, required=True, metavar="FILE")
    isometry.add_argument(
        "--inverse", action="store_true", help="Map W_f back onto c"
    )

    subparsers.add_parser(
        "dual-limit", parents=[with_f], help="Weak* limit of the unit vectors"
    )

    predual = subparsers.add_parser(
        "predual", parents=[common], help="Functional with a given basis limit"
    )
    predual.add_argument("--ehat", type=Path, required=True, metavar="FILE")

    mu = subparsers.add_parser("mu", parents=[with_f], help="The measure mu_i")
    mu.add_argument("--i", dest="i", type=_positive_int, required=True, metavar="I")

    quotient = subparsers.add_parser(
        "quotient", parents=[with_f], help="Image of g in W_f under the quotient map"
    )
    quotient.add_argument("--g", type=Path, required=True, metavar="FILE")
    quotient.add_argument(
        "--m", dest="m", type=_positive_int, required=True, metavar="M"
    )

    verify = subparsers.add_parser(
        "verify", parents=[with_f], help="Cross-verify every closed form"
    )
    verify.add_argument("--trunc", type=_positive_int, metavar="N")
    verify.add_argument("--tol", type=float, metavar="T")
    verify.add_argument("--depth", type=_positive_int, metavar="D")
    verify.add_argument(
        "--timings", action="store_true", help="Include elapsed time per check"
    )

    corpus = subparsers.add_parser(
        "corpus", parents=[common], help="Exhaustive grid of normalized f"
    )
    corpus.add_argument("--max-den", type=_positive_int, metavar="D")
    corpus.add_argument("--max-support", type=_positive_int, metavar="S")

    sweep = subparsers.add_parser(
        "sweep", parents=[common], help="Verify every functional of the grid"
    )
    sweep.add_argument("--max-den", type=_positive_int, metavar="D")
    sweep.add_argument("--max-support", type=_positive_int, metavar="S")
    sweep.add_argument("--workers", type=_positive_int, default=1, metavar="W")
    sweep.add_argument(
        "--timings", action="store_true", help="Include elapsed time per check"
    )

    args = parser.parse_args(argv)

    # If no subcommand specified, show help and exit
    if args.command is None:
        parser.print_help()
        sys.exit(0)

    return args


def _load_f(args: argparse.Namespace) -> L1Functional:
    return codec.functional_from_dict(codec.load_json(args.f), args.normalize)


def cmd_classify(args: argparse.Namespace, config: Config) -> dict[str, Any]:
    from .hyperplane import classify

    return {"class": classify(_load_f(args)).value}


def cmd_pconst(args: argparse.Namespace, config: Config) -> dict[str, Any]:
    from .hyperplane import classify, projection_constant

    f = _load_f(args)
    return {
        "projection_constant": codec.format_rational(projection_constant(f)),
        "class": classify(f).value,
    }


def cmd_minproj(args: argparse.Namespace, config: Config) -> dict[str, Any]:
    from .hyperplane import min_projection, minimizing_projection, one_complemented

    f = _load_f(args)
    if args.n is not None:
        return codec.projection_to_dict(minimizing_projection(f, args.n))
    if one_complemented(f):
        return codec.projection_to_dict(min_projection(f))
    return codec.projection_to_dict(minimizing_projection(f, max(f.support, 1)))


def cmd_apply(args: argparse.Namespace, config: Config) -> dict[str, Any]:
    from .hyperplane import projection_apply

    f = _load_f(args)
    z = codec.seq_from_dict(codec.load_json(args.z))
    x = codec.seq_from_dict(codec.load_json(args.x))
    return {"result": codec.seq_to_dict(projection_apply(f, z, x))}


def cmd_isometry(args: argparse.Namespace, config: Config) -> dict[str, Any]:
    from .hyperplane import HyperplaneClass, classify
    from .isometry import embed_c_into_wf, iso_c0, project_wf_to_c

    f = _load_f(args)
    x = codec.seq_from_dict(codec.load_json(args.x))
    hyperplane_class = classify(f)
    if hyperplane_class is HyperplaneClass.ISO_C:
        image = project_wf_to_c(f, x) if args.inverse else embed_c_into_wf(f, x)
    elif hyperplane_class is HyperplaneClass.ISO_C0:
        image = iso_c0(f, x)
    else:
        raise NotOneComplementedError(
            f"W_f is isometric to neither c nor c0 (class {hyperplane_class.value})",
            hyperplane_class=hyperplane_class.value,
        )
    return {"result": codec.seq_to_dict(image), "class": hyperplane_class.value}


def cmd_dual_limit(args: argparse.Namespace, config: Config) -> dict[str, Any]:
    from .duality import weak_star_limit

    limit = weak_star_limit(_load_f(args))
    data: dict[str, Any] = {"ehat": codec.vector_to_dict(limit.ehat)}
    if limit.warning:
        data["warning"] = limit.warning
    return data


def cmd_predual(args: argparse.Namespace, config: Config) -> dict[str, Any]:
    from .duality import predual_from_limit

    result = predual_from_limit(codec.vector_from_dict(codec.load_json(args.ehat)))
    return {
        "f": codec.vector_to_dict(result.functional),
        "class": result.hyperplane_class.value,
    }


def cmd_mu(args: argparse.Namespace, config: Config) -> dict[str, Any]:
    from .ordinal_quotient import make_mu

    mu = make_mu(_load_f(args), args.i)
    data = codec.measure_to_dict(mu)
    data["total_variation"] = codec.format_rational(mu.total_variation)
    return data


def cmd_quotient(args: argparse.Namespace, config: Config) -> dict[str, Any]:
    from .ordinal_quotient import quotient_apply

    f = _load_f(args)
    g = codec.func_from_dict(codec.load_json(args.g))
    image = quotient_apply(f, g, args.m)
    return {
        "values": [codec.format_rational(v) for v in image.values],
        "limit": codec.format_rational(image.limit),
    }


def cmd_verify(args: argparse.Namespace, config: Config) -> dict[str, Any]:
    from .verification import verify

    if args.trunc is not None:
        config.oracle.truncation = args.trunc
    if args.tol is not None:
        if args.tol <= 0:
            raise MalformedInputError(f"--tol must be positive, got {args.tol}")
        config.oracle.tolerance = args.tol
    if args.depth is not None:
        config.oracle.depth = args.depth
    timings = args.timings or config.verify.timings

    report = verify(_load_f(args), config)
    return report.to_dict(timings)


def _grid_bounds(args: argparse.Namespace, config: Config) -> tuple[int, int]:
    max_den = args.max_den or config.corpus.max_den
    max_support = args.max_support or config.corpus.max_support
    return max_den, max_support


def cmd_corpus(args: argparse.Namespace, config: Config) -> dict[str, Any]:
    from .corpus import exhaustive_functionals

    functionals = exhaustive_functionals(*_grid_bounds(args, config))
    return {
        "count": len(functionals),
        "functionals": [codec.vector_to_dict(f) for f in functionals],
    }


def cmd_sweep(args: argparse.Namespace, config: Config) -> dict[str, Any]:
    from .corpus import exhaustive_functionals
    from .verification import sweep

    functionals = exhaustive_functionals(*_grid_bounds(args, config))
    reports = sweep(functionals, config, workers=args.workers)
    timings = args.timings or config.verify.timings
    failed = sum(1 for r in reports if not r.passed)
    return {
        "count": len(reports),
        "failed": failed,
        "reports": [r.to_dict(timings) for r in reports],
    }


COMMANDS: dict[str, Handler] = {
    "classify": cmd_classify,
    "pconst": cmd_pconst,
    "minproj": cmd_minproj,
    "apply": cmd_apply,
    "isometry": cmd_isometry,
    "dual-limit": cmd_dual_limit,
    "predual": cmd_predual,
    "mu": cmd_mu,
    "quotient": cmd_quotient,
    "verify": cmd_verify,
    "corpus": cmd_corpus,
    "sweep": cmd_sweep,
}


def _malformed(message: str) -> dict[str, Any]:
    return {"error": "malformed_input", "detail": {"message": message}}


def main(argv: list[str] | None = None) -> int:
    """Main entry point for the application.

    Args:
        argv: Command-line arguments. If None, uses sys.argv.

    Returns:
        Exit code: 0 on success, 1 on a domain error or failed
        verification, 2 on malformed input.
    """
    args = parse_args(argv)
    logger = setup_logger(verbose=args.verbose)

    try:
        config = Config.from_file(args.config)
        logger.debug(f"Loaded configuration from {args.config or 'default location'}")
    except FileNotFoundError as e:
        logger.error(str(e))
        print(codec.dumps(_malformed(str(e))))
        return 2
    except ValueError as e:
        logger.error(f"Configuration error: {e}")
        print(codec.dumps(_malformed(f"Configuration error: {e}")))
        return 2

    handler = COMMANDS[args.command]
    try:
        result = handler(args, config)
    except CPlanesError as e:
        logger.error(f"{args.command}: {e}")
        print(codec.dumps(e.to_dict()))
        return 1
    except MalformedInputError as e:
        logger.error(f"Malformed input: {e}")
        print(codec.dumps(_malformed(str(e))))
        return 2
    except Exception as e:
        logger.error(f"{args.command} failed: {e}")
        logger.debug("Exception details:", exc_info=True)
        return 1

    print(codec.dumps(result))

    if args.command in ("verify", "sweep"):
        passed = (
            result["status"] == "PASS"
            if args.command == "verify"
            else result["failed"] == 0
        )
        if not passed:
            logger.warning(f"{args.command} completed with failing checks")
            return 1
    return 0
