"""Walshsum CLI - batch verification runs with machine-readable tables."""

from .main import cli_main

__all__ = ["cli_main"]
