"""Run configurations for the scripts in scripts/."""
from __future__ import annotations

import os
from dataclasses import asdict, dataclass
from typing import Optional

from .gb import CACHE_ENV


@dataclass
class ReproConfig:
    tier: str = "fast"
    cache_dir: Optional[str] = None
    out: Optional[str] = None  # JSON report path; stdout when None

    def __post_init__(self):
        if self.tier not in ("fast", "slow"):
            raise ValueError(f"unknown tier {self.tier!r}")

    def apply(self) -> None:
        # the engine reads the cache location from the environment
        if self.cache_dir:
            os.environ[CACHE_ENV] = self.cache_dir

    def to_json(self) -> dict:
        return asdict(self)


@dataclass
class FigureConfig:
    lo: int = 1
    hi: int = 20
    fmt: str = "svg"
    out: str = "boundary.svg"

    def __post_init__(self):
        if self.fmt not in ("svg", "text"):
            raise ValueError(f"unsupported figure format {self.fmt!r}")
        if self.lo < 1 or self.hi > 40:
            raise ValueError("range must lie within 1..40")
