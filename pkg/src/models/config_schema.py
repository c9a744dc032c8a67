"""
Run configuration shared by the CLI, the checks and the acceptance script.
"""

import os
from pathlib import Path
from typing import Literal

from pydantic import BaseModel, ConfigDict, Field, field_validator

OutputFormat = Literal["text", "csv", "machine"]


def default_cache_path() -> Path:
    """Per-user data directory, honouring XDG_DATA_HOME."""
    base = os.environ.get("XDG_DATA_HOME") or Path.home() / ".local" / "share"
    return Path(base) / "symavoid" / "kostka_cache.json"


class RunConfig(BaseModel):
    """Caps, budgets and output settings for one run."""

    model_config = ConfigDict(validate_assignment=True, extra="forbid")

    enumeration_cap: int = Field(10, gt=0, description="Largest n for which S_n is enumerated")
    composition_cap: int = Field(20, gt=0, description="Largest n for composition tables")
    node_budget: int = Field(10**8, gt=0, description="Search nodes / candidates per check")
    sample_count: int = Field(10**6, gt=0, description="Samples in sampling mode")
    output_format: OutputFormat = Field("text", description="Report rendering")
    cache_path: Path = Field(default_factory=default_cache_path, description="Kostka cache")
    partial_allowed: bool = Field(False, description="Report partial coverage instead of failing")
    threads: int = Field(
        default_factory=lambda: os.cpu_count() or 1, gt=0, description="Worker processes"
    )
    seed: int = Field(0, ge=0, description="Random seed for sampling")
    log_level: str = Field("INFO", description="Logging level name")
    isomorph_pruning: bool = Field(False, description="Prune isomorphic branches in searches")

    @field_validator("log_level")
    @classmethod
    def validate_log_level(cls, v: str) -> str:
        level = v.strip().upper()
        if level not in {"DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"}:
            raise ValueError(f"unknown log level {v!r}")
        return level

    @field_validator("cache_path")
    @classmethod
    def expand_cache_path(cls, v: Path) -> Path:
        return Path(v).expanduser()
