"""Module entry point: python -m toricarcs."""

from .cli import run

run()
