"""
Main entry point for the ECB (entropy-conserving binarization) toolkit.

This script builds the command-line interface, configures logging, loads the user settings
and dispatches to one of the subcommands:

    encode   compress a file into an ECB container
    decode   reconstruct a file from a container
    analyze  report source and plane entropies and the conservation residual
    bench    benchmark ECB against classical binarizations, CSV output
    trace    print the step-by-step binarization tables of a small input

Every error class maps to its own exit code (see commands.ExitCode).
"""
import argparse
import logging
import os
import sys

from commands import ExitCode, analyze, bench, decode, encode, exit_code_for, trace
from utils.settings_manager import SettingsManager

logger = logging.getLogger(__name__)

LOG_ENV_VAR = "ECBIN_LOG"
LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"

COMMANDS = {
    "encode": encode.run,
    "decode": decode.run,
    "analyze": analyze.run,
    "bench": bench.run,
    "trace": trace.run,
}


def configure_logging(settings_manager: SettingsManager) -> None:
    """Send log records to stderr; the level comes from $ECBIN_LOG, then the `log_level` setting."""
    name = (os.environ.get(LOG_ENV_VAR) or settings_manager.get("log_level") or "INFO").upper()
    level = logging.getLevelName(name)
    logging.basicConfig(format=LOG_FORMAT, stream=sys.stderr)
    if isinstance(level, int):
        logging.getLogger().setLevel(level)
    else:
        logging.getLogger().setLevel(logging.INFO)
        logger.warning(f"Unknown log level {name!r}, using INFO")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ecbin", description="Entropy-conserving binarization toolkit")
    subparsers = parser.add_subparsers(dest="command", required=True)

    def add_io(sub, output_help):
        sub.add_argument("input", help='Input file, "-" for stdin')
        sub.add_argument("-o", "--output", help=output_help)

    def add_order(sub):
        sub.add_argument("--order", help="freq | first-seen | explicit:<comma list of symbols>")

    def add_threads(sub):
        sub.add_argument("--threads", type=int, help="Plane coding workers (0 = available parallelism)")

    sub = subparsers.add_parser("encode", help="Compress a file")
    add_io(sub, 'Container path (default: <input>.ecb, "-" for stdout)')
    add_order(sub)
    add_threads(sub)

    sub = subparsers.add_parser("decode", help="Decompress a container")
    add_io(sub, 'Output path (default: input without ".ecb", "-" for stdout)')
    add_threads(sub)

    sub = subparsers.add_parser("analyze", help="Entropy report and conservation check")
    add_io(sub, "Report path (default: stdout)")
    add_order(sub)
    sub.add_argument("--format", choices=("json", "csv"), help="Report format")

    sub = subparsers.add_parser("bench", help="Benchmark against the classical binarizations")
    sub.add_argument("-o", "--output", help="CSV path (default: stdout)")
    sub.add_argument("--sizes", help="Comma list of sizes, e.g. 2^20,2^21")
    sub.add_argument("--dist", action="append",
                     help="uniform[:m] | geometric:<p> | zipf:<s> | twospike:<p> | dyadic:<m> (repeatable)")
    sub.add_argument("--repetitions", type=int, help="Timed runs per measurement, the fastest is kept")
    sub.add_argument("--seed", type=int, help="Base seed of the synthetic sources")
    sub.add_argument("--no-timings", action="store_true", help="Report zero wall times for byte-stable output")
    add_threads(sub)

    sub = subparsers.add_parser("trace", help="Print the binarization tables of a small input")
    add_io(sub, "Output path (default: stdout)")
    add_order(sub)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return ExitCode.USAGE if e.code else ExitCode.OK

    settings_manager = SettingsManager()
    configure_logging(settings_manager)
    logger.debug(f"⚙️ Settings loaded from {settings_manager.path}: {settings_manager.all()}")

    try:
        return int(COMMANDS[args.command](args, settings_manager))
    except Exception as e:
        code = exit_code_for(e)
        if code is ExitCode.UNEXPECTED:
            logger.exception(f"❌ {args.command} failed unexpectedly")
        else:
            logger.error(f"❌ {args.command} failed: {e}")
        return int(code)


if __name__ == "__main__":
    sys.exit(main())
