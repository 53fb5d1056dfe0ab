"""Run configuration shared by the CLI and the verification harness."""

from __future__ import annotations

import os
from dataclasses import dataclass

PRECISION_ENV = "BRAIDSIG_PRECISION"

#: mantissa bits of the escalation ladder cap
PRECISION_CAP = 1024

#: default working tolerance, relative to the largest matrix entry
DEFAULT_TOL = 1e-9

#: default mantissa bits for high-precision materialization of torus values
DEFAULT_PRECISION = 128


def default_precision() -> int:
    raw = os.environ.get(PRECISION_ENV)
    return int(raw) if raw else DEFAULT_PRECISION


@dataclass(frozen=True)
class RunConfig:
    precision: int = DEFAULT_PRECISION
    tolerance: float = DEFAULT_TOL
    seed: int = 0
    trials: int = 300
    output: str = "json"  # json | csv | text
    jobs: int = 1

    def __post_init__(self):
        if self.precision < 64:
            raise ValueError(f"precision must be >= 64 bits, got {self.precision}")
        if not (0.0 < self.tolerance <= 1e-3):
            raise ValueError(f"tolerance must lie in (0, 1e-3], got {self.tolerance}")
        if self.output not in ("json", "csv", "text"):
            raise ValueError(f"unknown output format {self.output!r}")
        if self.jobs < 1:
            raise ValueError("jobs must be >= 1")
