"""Main entry point for the walshsum CLI."""

from __future__ import annotations

import argparse
import logging
import sys
from collections.abc import Sequence

from rich.logging import RichHandler
from rich.markup import escape

from walshsum.errors import WalshsumError

from .commands import cmd_bounds, cmd_corpus, cmd_kernel_norms, cmd_lemmas
from .config import COMMANDS, FORMATS, MODES, ConfigError, console, load_config
from .ui import show_banner

EXIT_USAGE = 2


def _common_options() -> argparse.ArgumentParser:
    """Flags shared by every command; None means "take the config value"."""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="INI config file (default: $WALSHSUM_CONFIG)")
    common.add_argument("--rank", type=int, help="Rank override for kernels and corpus functions")
    common.add_argument("--n-min", type=int, help="Smallest n (default: 1)")
    common.add_argument("--n-max", type=int, help="Largest n")
    common.add_argument("--mode", choices=MODES, help="Scalar mode (default: exact)")
    common.add_argument("--seed", type=int, help="Seed for random rows and corpus functions")
    common.add_argument("--format", choices=FORMATS, help="Table format (default: csv)")
    common.add_argument("--out", help="Write the table to this path instead of stdout")
    common.add_argument("--only", action="append", metavar="GLOB", help="Only ids matching GLOB (repeatable)")
    common.add_argument("--workers", type=int, help="Process pool size (default: $WALSHSUM_WORKERS or 1)")
    common.add_argument("--verbose", "-v", action="store_true", help="Log progress at debug level")
    return common


def _corpus_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--corpus-kind", action="append", help="Corpus kind (repeatable; default: all)")
    parser.add_argument("--corpus-ranks", type=int, nargs="+", help="Corpus ranks (default: 3 4 5 6)")
    parser.add_argument("--corpus-count", type=int, help="Random functions per kind and rank")
    parser.add_argument("--beta", action="append", help="Exponent of dyadic-hoelder functions (repeatable)")


def parse_args(argv: Sequence[str] | None = None) -> argparse.Namespace:
    """Parse command line arguments."""
    parser = argparse.ArgumentParser(
        prog="walshsum",
        description="Walsh-Fourier summability: kernel identities, kernel norms and approximation bounds",
    )
    subparsers = parser.add_subparsers(dest="command", required=True, help="Command to run")
    common = _common_options()

    lemmas = subparsers.add_parser("lemmas", parents=[common], help=COMMANDS["lemmas"])
    lemmas.add_argument("--blahota-rows", type=int, help="Random rows per n for the Blahota checks")
    lemmas.add_argument("--blahota-stride", type=int, help="Blahota thinning stride above n = 16")
    lemmas.add_argument("--inject-fault", action="store_true", help=argparse.SUPPRESS)

    subparsers.add_parser("kernel-norms", parents=[common], help=COMMANDS["kernel-norms"])

    bounds = subparsers.add_parser("bounds", parents=[common], help=COMMANDS["bounds"])
    bounds.add_argument("--scheme", action="append", help="Weight scheme, e.g. fejer, log, norlund:k+1, weighted:1/k (repeatable)")
    bounds.add_argument("--p", action="append", help="Exponent: integer, fraction or inf (repeatable)")
    _corpus_options(bounds)

    corpus = subparsers.add_parser("corpus", parents=[common], help=COMMANDS["corpus"])
    _corpus_options(corpus)

    return parser.parse_args(argv)


def setup_logging(*, verbose: bool) -> None:
    """Route log records through rich on the status console."""
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        format="%(message)s",
        datefmt="[%X]",
        handlers=[RichHandler(console=console, show_path=False)],
        force=True,
    )


def main(argv: Sequence[str] | None = None) -> int:
    """Run one command and return its exit status."""
    args = parse_args(argv)
    setup_logging(verbose=args.verbose)
    flags = {k: v for k, v in vars(args).items() if k not in {"command", "config", "verbose", "inject_fault"}}
    try:
        config = load_config(args.command, flags, args.config)
        show_banner(config)
        if config.command == "lemmas":
            return cmd_lemmas(config, inject_fault=args.inject_fault)
        if config.command == "kernel-norms":
            return cmd_kernel_norms(config)
        if config.command == "bounds":
            return cmd_bounds(config)
        return cmd_corpus(config)
    except (ConfigError, WalshsumError) as e:
        console.print(f"[bold red]Error:[/bold red] {escape(str(e))}")
        return EXIT_USAGE


def cli_main() -> None:
    """Entry point for console script."""
    try:
        sys.exit(main())
    except KeyboardInterrupt:
        # Clean exit on Ctrl+C - suppress ugly traceback
        console.print("\n[yellow]Interrupted[/yellow]")
        sys.exit(130)


if __name__ == "__main__":
    cli_main()
