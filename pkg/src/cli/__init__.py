"""
Command-line front end: solve, indices, verify, reproduce and sweep.
"""

from .commands import cmd_indices, cmd_solve, cmd_verify, solve_inventory
from .config import RunConfig, load_config, resolve_window
from .main import build_parser, main
from .reproduce import EXAMPLES, ReproduceRow, RowStatus, cmd_reproduce, reproduce
from .sweep import cmd_sweep, collisions, sweep, sweep_values

__all__ = [
    "cmd_indices",
    "cmd_solve",
    "cmd_verify",
    "solve_inventory",
    "RunConfig",
    "load_config",
    "resolve_window",
    "build_parser",
    "main",
    "EXAMPLES",
    "ReproduceRow",
    "RowStatus",
    "cmd_reproduce",
    "reproduce",
    "cmd_sweep",
    "collisions",
    "sweep",
    "sweep_values",
]
