"""Command line entry point: giantbic <subcommand> --config <path> --out <dir> ..."""

import argparse
import logging
import os
import sys
from typing import List, Optional

from .configs import EXIT_CODES, OUTPUT_DIR_ENV_NAME, OUTPUT_FORMATS, SUBCOMMANDS
from .runner import exit_code, run
from .utils.io import ensure_directory
from .utils.validation import load_config

logger = logging.getLogger("giantbic")

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="giantbic",
        description="Bound states and quench dynamics of a giant atom on a coupled resonator waveguide.",
    )
    parser.add_argument("subcommand", choices=SUBCOMMANDS)
    parser.add_argument("--config", type=str, default=None, help="flat key = value config file")
    parser.add_argument("--out", type=str, default=None, help="output directory (overrides output.directory)")
    parser.add_argument("--format", choices=OUTPUT_FORMATS, default=None, help="table format")
    parser.add_argument("--jobs", type=int, default=1, help="worker processes for sweep")
    parser.add_argument("--seed", type=int, default=None, help="overrides the config seed")
    parser.add_argument("--verbose", action="store_true", help="log at DEBUG level")
    return parser


def configure_logging(verbose: bool = False, directory: Optional[str] = None):
    handlers: List[logging.Handler] = [logging.StreamHandler(sys.stderr)]
    if directory is not None:
        handlers.append(logging.FileHandler(os.path.join(ensure_directory(directory), "giantbic.log"), mode="w"))
    logging.basicConfig(level=logging.DEBUG if verbose else logging.INFO, format=LOG_FORMAT, handlers=handlers, force=True)


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    output_dir = args.out or os.environ.get(OUTPUT_DIR_ENV_NAME)
    configure_logging(args.verbose, output_dir)

    try:
        values = load_config(args.config)
        if args.seed is not None:
            values["seed"] = str(args.seed)
        manifest = run(args.subcommand, values, output_dir, args.format, max(1, args.jobs))
    except Exception as error:
        code = exit_code(error)
        logger.error("%s", error)
        if code == EXIT_CODES["internal"]:
            logger.debug("Traceback", exc_info=True)
        return code

    code = exit_code(manifest=manifest)
    logger.info("Finished %s with exit code %d", args.subcommand, code)
    return code


if __name__ == "__main__":
    sys.exit(main())
