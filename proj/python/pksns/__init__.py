"""Python front end for the pksns spectral solver.

Fields are numpy arrays of shape (ny, nx) on the grid x in [0, 2pi),
y in [-ly, ly); row index is y.
"""

from pathlib import Path

from ._pksns import (
    ConfigError,
    Grid,
    dry_run,
    dump_config,
    envelope_check,
    evolve_linear,
    lambda_A,
    mass,
    norm_l2,
    norm_x,
    project_nonzero,
    project_zero,
    run,
    semigroup,
    simulate,
    verify,
)

__all__ = [
    "ConfigError",
    "Grid",
    "dry_run",
    "dump_config",
    "envelope_check",
    "evolve_linear",
    "lambda_A",
    "load_text",
    "mass",
    "norm_l2",
    "norm_x",
    "project_nonzero",
    "project_zero",
    "run",
    "semigroup",
    "simulate",
    "verify",
]


def load_text(path):
    """Reads a YAML scenario file so it can be handed to the runners."""
    return Path(path).read_text()
