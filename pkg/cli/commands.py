# cli/commands.py
import argparse
import asyncio
import logging
import sys
from pathlib import Path
from typing import List, Optional

from dotenv import load_dotenv

from ingham import __version__
from ingham.exceptions import InghamError

from .config import ConfigError, ExperimentConfig, parse_family
from .runner import CertificationEngine, exit_status

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_CONFIG = 2


def _add_common(parser: argparse.ArgumentParser):
    parser.add_argument("--family", help="family JSON file, or the document itself: {dimension, points, labels?, classes?}")
    partition = parser.add_mutually_exclusive_group()
    partition.add_argument("--m", type=int, help="residue partition into m classes (1-D); 1 means a single class")
    partition.add_argument("--classes", type=Path, help="JSON object label -> class index in 1..m")
    radius = parser.add_mutually_exclusive_group()
    radius.add_argument("--R", type=float, dest="radius", help="single ball radius")
    radius.add_argument("--R-grid", type=int, dest="grid_count", help="number of radii geometric in r inside (R0, 2R0]")
    parser.add_argument("--r-span", type=float, help="r_min / r_max of the geometric grid (default 1e-3)")
    parser.add_argument("--paper-uniform", action="store_true", help="r-free worst-case class constants")
    parser.add_argument("--check-quadrature", action="store_true", help="cross-check sampled Gram entries by quadrature")
    parser.add_argument("--dump-profile", type=Path, help="write rho, H, h, g to this CSV")
    parser.add_argument("--dimension", type=int, help="dimension for --dump-profile without a family")
    parser.add_argument("--out", type=Path, help="JSON report path (stdout when omitted)")
    parser.add_argument("--workers", type=int, help="parallel radius evaluations (INGHAM_WORKERS)")
    parser.add_argument("--log-level", type=str.upper, choices=["DEBUG", "INFO", "WARNING", "ERROR"])


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ingham",
        description="Explicit two-sided estimates for exponential sums over balls, checked against Gram matrices.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    constants = sub.add_parser("constants", help="constant chain c1, c2, L(R) for one radius or a grid")
    _add_common(constants)

    gram = sub.add_parser("gram", help="Gram matrix, Riesz bounds and dual norms at one radius")
    _add_common(gram)
    gram.add_argument("--dump-matrix", type=Path, nargs="?", const=Path("gram.csv"), help="write entries as CSV")

    verify = sub.add_parser("verify", help="certify L <= lambda_min and lambda_max <= c2 over radii")
    _add_common(verify)

    sweep = sub.add_parser("sweep", help="verify over a grid, emit a CSV table and the log-log slope of L")
    _add_common(sweep)
    sweep.add_argument("--csv", type=Path, help="sweep table path (default: --out with .csv suffix)")
    sweep.add_argument("--fit-points", type=int, help="smallest-r radii used by the slope fit (default 4)")
    return parser


def _is_inline(value: str) -> bool:
    return value.lstrip().startswith("{")


def config_from_args(args: argparse.Namespace) -> ExperimentConfig:
    return ExperimentConfig.build(
        family_path=Path(args.family) if args.family and not _is_inline(args.family) else None,
        family_inline=args.family if args.family and _is_inline(args.family) else None,
        m=args.m,
        classes_path=args.classes,
        radius=args.radius,
        grid_count=args.grid_count,
        r_span=args.r_span,
        paper_uniform=args.paper_uniform,
        dump_matrix=getattr(args, "dump_matrix", None),
        check_quadrature=args.check_quadrature,
        dump_profile=args.dump_profile,
        dimension=args.dimension,
        out=args.out,
        csv=getattr(args, "csv", None),
        workers=args.workers,
        fit_points=getattr(args, "fit_points", None),
    )


async def dispatch(command: str, engine: CertificationEngine) -> int:
    if command == "verify":
        report = await engine.run_verify()
        _echo(engine, report.to_dict())
        return exit_status(report)
    if command == "sweep":
        report = await engine.run_sweep()
        _echo(engine, report.to_dict())
        return exit_status(report)
    if command == "constants":
        payload = engine.constants()
        _echo(engine, payload)
        return EXIT_FAILED if payload["errors"] else EXIT_OK
    payload = engine.gram()
    _echo(engine, payload)
    return EXIT_FAILED if "error" in payload else EXIT_OK


def _echo(engine: CertificationEngine, payload) -> None:
    if engine.config.out is None:
        sys.stdout.write(engine.writer.dumps(payload))


def run(argv: Optional[List[str]] = None) -> int:
    load_dotenv()
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.log_level:
        logging.getLogger().setLevel(args.log_level)

    try:
        config = config_from_args(args)
    except ConfigError as exc:
        for line in exc.diagnostics:
            logger.error(f"{exc.source}: {line}")
        return EXIT_CONFIG

    engine = CertificationEngine(config)
    try:
        if config.dump_profile is not None:
            dimension = config.dimension
            if dimension is None and config.has_family:
                dimension = parse_family(config.family_text(), config.family_source).dimension
            if dimension is None:
                raise ConfigError("arguments", ["--dump-profile needs --family or --dimension"])
            engine.dump_profile(dimension)
            if not config.has_family:
                return EXIT_OK
        return asyncio.run(dispatch(args.command, engine))
    except ConfigError as exc:
        for line in exc.diagnostics:
            logger.error(f"{exc.source}: {line}")
        return EXIT_CONFIG
    except InghamError as exc:
        logger.error(f"{type(exc).__name__}: {exc}")
        return EXIT_FAILED
    finally:
        engine.shutdown()
