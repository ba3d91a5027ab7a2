"""Python bindings for the derived heights library."""

import json

from ._dh import (
    DEFAULT_MAX_SIZE,
    CapError,
    DomainError,
    Error,
    IndeterminateError,
    PrecisionError,
    ValidationError,
    anticyclotomic_prediction,
    degeneracy_floor,
    infer_invariants,
    run_command,
    shape_dims,
)

EXIT_PASS, EXIT_CHECK_FAILED, EXIT_INVALID, EXIT_CAP = 0, 1, 2, 3


class CommandResult:
    def __init__(self, exit_code, stdout, stderr):
        self.exit_code = exit_code
        self.stderr = stderr
        self.report = json.loads(stdout) if stdout.strip() else None

    @property
    def passed(self):
        return self.exit_code == EXIT_PASS


def run(command, **options):
    """Run a CLI subcommand in-process; options mirror the CLI flags."""
    return CommandResult(*run_command(command, **options))


__all__ = [
    "CapError",
    "CommandResult",
    "DEFAULT_MAX_SIZE",
    "DomainError",
    "Error",
    "IndeterminateError",
    "PrecisionError",
    "ValidationError",
    "anticyclotomic_prediction",
    "degeneracy_floor",
    "infer_invariants",
    "run",
    "run_command",
    "shape_dims",
]
