"""
Command-line entry point: python main.py <subcommand> [options]
"""

import argparse
import logging
import sys

from pydantic import ValidationError

from cli import oracle_check, output, sweep, systems, tables, wavefunction
from errors import TRAError
from settings import TOOL_VERSION, configure_logging

logger = logging.getLogger(__name__)

# Command modules, each registering its subcommands
COMMAND_MODULES = (tables, systems, wavefunction, sweep, oracle_check)


def common_options() -> argparse.ArgumentParser:
    """Output and logging flags shared by every subcommand"""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["csv", "json"])
    common.add_argument("--decimals", type=int)
    common.add_argument("--full-precision", dest="full_precision", action="store_true", default=None)
    common.add_argument("--units", choices=["dimensionless", "physical"])
    common.add_argument("--output", help="write the table here and its manifest next to it")
    common.add_argument("--config", help="key=value file of defaults for any option")
    common.add_argument("--log-level", dest="log_level")
    return common


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tra",
        description="Tridiagonal representation spectra, phase shifts and wavefunctions",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {TOOL_VERSION}")
    subparsers = parser.add_subparsers(dest="command", required=True)
    parents = [common_options()]
    for module in COMMAND_MODULES:
        module.register(subparsers, parents)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = output.load_config(args.config)
        configure_logging(output.pick(args, config, "log_level", None))
        options = output.resolve_options(args, config)
        table = args.handler(args, config, options)
        output.emit(args.command, table, options)
    except TRAError as exc:
        print(f"❌ {type(exc).__name__}: {exc}", file=sys.stderr)
        return exc.exit_code
    except ValidationError as exc:
        print(f"❌ invalid parameters: {exc}", file=sys.stderr)
        return 2

    if table.failure:
        print(f"❌ {table.failure}", file=sys.stderr)
    return table.exit_code


if __name__ == "__main__":
    sys.exit(main())
