#!/usr/bin/env python3
"""
Runtime configuration.
Environment defaults come from a .env file (python-dotenv) or the process
environment; budgets and CLI runs are validated pydantic models.
"""

import os
from pathlib import Path
from typing import Literal, Optional

from dotenv import load_dotenv
from pydantic import BaseModel, ConfigDict, Field, PositiveFloat, PositiveInt, field_validator

load_dotenv()

DEFAULT_BUDGET_EDGES = int(os.getenv("VFREE_BUDGET_EDGES", "26"))
DEFAULT_BUDGET_NODES = int(os.getenv("VFREE_BUDGET_NODES", "12"))
DEFAULT_TIME_LIMIT = float(os.getenv("VFREE_TIME_LIMIT", "60"))

GeVerifyLevel = Literal["always", "sample", "off"]


def ge_verify_level() -> GeVerifyLevel:
    """Level of the Gallai-Edmonds self-check: full under assertions, sampled with -O."""
    level = os.getenv("VFREE_GE_VERIFY", "always" if __debug__ else "sample").strip().lower()
    if level not in ("always", "sample", "off"):
        return "always"
    return level


class OracleBudget(BaseModel):
    """Caps for the exponential-time oracles."""

    model_config = ConfigDict(frozen=True)

    max_edges: PositiveInt = Field(default_factory=lambda: DEFAULT_BUDGET_EDGES)
    max_nodes: PositiveInt = Field(default_factory=lambda: DEFAULT_BUDGET_NODES)
    time_limit: PositiveFloat = Field(default_factory=lambda: DEFAULT_TIME_LIMIT)


Subcommand = Literal["solve", "extmatch", "reduce3dm", "oracle", "verify", "gen"]


class RunConfig(BaseModel):
    """One CLI invocation, validated before any work starts."""

    subcommand: Subcommand
    inputs: list[Path] = Field(default_factory=list)
    output: Optional[Path] = None
    seed: int = Field(default=0, ge=0)
    required: Optional[str] = None
    budget_edges: Optional[PositiveInt] = None
    budget_nodes: Optional[PositiveInt] = None
    time_limit: Optional[PositiveFloat] = None
    verbosity: int = 0

    @field_validator("inputs")
    @classmethod
    def _inputs_exist(cls, paths):
        missing = [str(p) for p in paths if not p.is_file()]
        if missing:
            raise ValueError(f"input file not found: {', '.join(missing)}")
        return paths

    @field_validator("required")
    @classmethod
    def _required_exists(cls, value):
        if value is not None and value != "all" and not Path(value).is_file():
            raise ValueError(f"required-set file not found: {value}")
        return value

    def budget(self) -> OracleBudget:
        overrides = {
            "max_edges": self.budget_edges,
            "max_nodes": self.budget_nodes,
            "time_limit": self.time_limit,
        }
        return OracleBudget(**{k: v for k, v in overrides.items() if v is not None})
