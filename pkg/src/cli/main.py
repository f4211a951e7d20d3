"""
sturmghost command-line entry point.

    sturmghost solve --fixture P0 --lmax 26
    sturmghost indices --fixture P1 --q -22
    sturmghost verify --fixture P2 --oracle-n 399
    sturmghost reproduce qm22
    sturmghost sweep --qmin -35 --qmax 0 --step 0.5 --workers 4

Reports go to stdout, logs to stderr.
"""
import argparse
import logging
from pathlib import Path
import sys
from typing import List, Optional

from ..errors import SturmError
from .commands import cmd_indices, cmd_solve, cmd_verify
from .config import load_config
from .reproduce import EXAMPLES, cmd_reproduce
from .sweep import cmd_sweep, sweep_values

logger = logging.getLogger(__name__)

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"
USAGE_ERROR = 2

# argparse dest -> RunConfig field
CONFIG_FLAGS = (
    "fixture", "q", "problem_file",
    "lmin", "lmax", "re_min", "re_max", "im_min", "im_max", "min_positive",
    "tol", "refine_tol", "tol_deg", "quad_tol",
    "output_dir", "formats", "workers", "allow_unstable", "side", "oracle_n",
)


def _add_problem_args(p: argparse.ArgumentParser, with_source: bool = True) -> None:
    if with_source:
        p.add_argument("--fixture", choices=["P0", "P1", "P2"], help="built-in problem")
        p.add_argument("--q", type=float, help="constant potential of P1, as written")
        p.add_argument("--problem-file", dest="problem_file", type=Path, help="JSON problem definition")

    window = p.add_argument_group("window")
    window.add_argument("--lmin", type=float)
    window.add_argument("--lmax", type=float)
    window.add_argument("--re-min", dest="re_min", type=float)
    window.add_argument("--re-max", dest="re_max", type=float)
    window.add_argument("--im-min", dest="im_min", type=float)
    window.add_argument("--im-max", dest="im_max", type=float)
    window.add_argument("--min-positive", dest="min_positive", type=int,
                        help="positive real eigenvalues the default window must hold")

    tol = p.add_argument_group("tolerances")
    tol.add_argument("--tol", type=float, help="integration tolerance")
    tol.add_argument("--refine-tol", dest="refine_tol", type=float)
    tol.add_argument("--tol-deg", dest="tol_deg", type=float)
    tol.add_argument("--quad-tol", dest="quad_tol", type=float)

    out = p.add_argument_group("output")
    out.add_argument("--output-dir", dest="output_dir", type=Path)
    out.add_argument("--format", dest="formats", action="append", choices=["json", "csv", "parquet"],
                     help="repeat for several formats")
    out.add_argument("--workers", type=int)
    out.add_argument("--config", type=Path, help="JSON file whose keys override flags")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sturmghost", description="Spectra of non-definite Sturm-Liouville problems")
    parser.add_argument("--log-level", default="WARNING", choices=["DEBUG", "INFO", "WARNING", "ERROR"])
    sub = parser.add_subparsers(dest="command", required=True)

    solve = sub.add_parser("solve", help="real and non-real eigenvalues with certificate")
    _add_problem_args(solve)

    indices = sub.add_parser("indices", help="Richardson and Haupt indices and numbers")
    _add_problem_args(indices)
    indices.add_argument("--side", choices=["positive", "negative"])
    indices.add_argument("--allow-unstable", dest="allow_unstable", action="store_const", const=True)

    verify = sub.add_parser("verify", help="run every applicable check")
    _add_problem_args(verify)
    verify.add_argument("--side", choices=["positive", "negative"])
    verify.add_argument("--oracle-n", dest="oracle_n", type=int, help="interior nodes of the discrete cross-check")

    reproduce = sub.add_parser("reproduce", help="published values side by side with computed ones")
    reproduce.add_argument("example_id", choices=sorted(EXAMPLES))
    reproduce.add_argument("--output-dir", dest="output_dir", type=Path)

    sweep = sub.add_parser("sweep", help="eigenvalue trajectories of P1 over a range of q")
    _add_problem_args(sweep, with_source=False)
    sweep.add_argument("--qmin", type=float, required=True)
    sweep.add_argument("--qmax", type=float, required=True)
    sweep.add_argument("--step", type=float, default=0.5)
    return parser


def _config_flags(args: argparse.Namespace) -> dict:
    return {name: getattr(args, name, None) for name in CONFIG_FLAGS}


def run(args: argparse.Namespace) -> int:
    if args.command == "reproduce":
        if args.output_dir is not None:
            args.output_dir.mkdir(parents=True, exist_ok=True)
        return cmd_reproduce(args.example_id, args.output_dir)

    flags = _config_flags(args)
    if args.command == "sweep":
        qs = sweep_values(args.qmin, args.qmax, args.step)
        flags.update(fixture="P1", q=float(qs[0]))
        config = load_config(flags, args.config)
        config.output_dir.mkdir(parents=True, exist_ok=True)
        return cmd_sweep(config, qs)

    config = load_config(flags, args.config)
    config.output_dir.mkdir(parents=True, exist_ok=True)
    commands = {"solve": cmd_solve, "indices": cmd_indices, "verify": cmd_verify}
    return commands[args.command](config)


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE_ERROR if exc.code else 0

    logging.basicConfig(level=args.log_level, format=LOG_FORMAT, stream=sys.stderr)
    try:
        return run(args)
    except SturmError as exc:
        logger.error(str(exc))
        sys.stderr.write(f"error: {exc}\n")
        return exc.exit_code
    except ValueError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())
