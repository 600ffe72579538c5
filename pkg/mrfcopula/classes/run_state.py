"""
@fileoverview This module defines the structures passed through a command run:
              the validated run configuration, the tabular command result and
              the state dictionary the graph nodes read and extend.

@filepath mrfcopula/classes/run_state.py
"""

import os
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, TypedDict

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from .errors import ErrorCode, ValidationFailure
from .portfolio.base_models import MRFModel
from .portfolio.types.enums import Command, OutputFormat, SampleKind


def _env(name: str) -> Optional[str]:
    """Value of an environment variable; empty or blank counts as unset."""
    value = os.getenv(name)
    return value if value and value.strip() else None


def _env_number(name: str, default, cast):
    value = _env(name)
    if value is None:
        return default
    try:
        return cast(value)
    except ValueError as e:
        raise ValidationFailure(ErrorCode.INVALID_CONFIG, f"{name}={value!r} is not a number",
                                variable=name) from e


def _env_int(name: str, default: int) -> int:
    return _env_number(name, default, int)


def _env_float(name: str, default: float) -> float:
    return _env_number(name, default, float)


class RunConfig(BaseModel):
    """
    Validated arguments of one command-line invocation. Defaults come from the
    environment (MRF_* variables, loaded from .env by the entry point).
    """
    model_config = ConfigDict(frozen=True)

    command: Command = Field(..., description="Subcommand to run")
    model_path: Path = Field(..., description="Path of the model JSON file")
    output_path: Optional[Path] = Field(None, description="Artifact path; stdout when absent")
    output_format: OutputFormat = Field(OutputFormat.CSV, description="csv or json")
    seed: int = Field(default_factory=lambda: _env_int("MRF_SEED", 0), ge=0)
    draws: int = Field(default_factory=lambda: _env_int("MRF_DRAWS", 1_000_000), ge=1)
    threads: Optional[int] = Field(
        default_factory=lambda: _env_int("MRF_THREADS", os.cpu_count() or 1), ge=1
    )
    point: Optional[Tuple[float, ...]] = Field(None, description="Copula point for eval")
    pair: Optional[Tuple[int, int]] = Field(None, description="Component pair (i, k)")
    subset: Optional[Tuple[int, ...]] = Field(None, description="Components for simdefault")
    sample_kind: SampleKind = Field(SampleKind.UNIFORMS, description="uniforms or times")
    numeric: bool = Field(False, description="Add the quadrature value of Spearman's rho")
    monte_carlo: bool = Field(False, description="Add the Monte Carlo simultaneous default")
    ugrid: Optional[Tuple[float, float, int]] = Field(None, description="(start, stop, steps) for mdp-path")
    hyp_tolerance: float = Field(
        default_factory=lambda: _env_float("MRF_HYP_TOLERANCE", 1e-13), gt=0, lt=1
    )
    mass_tolerance: float = Field(
        default_factory=lambda: _env_float("MRF_MASS_TOLERANCE", 1e-12), gt=0, lt=1
    )
    quad_tolerance: float = Field(
        default_factory=lambda: _env_float("MRF_QUAD_TOLERANCE", 1e-10), ge=1e-10, lt=1
    )

    @field_validator("ugrid")
    @classmethod
    def check_ugrid(cls, value):
        if value is None:
            return value
        start, stop, steps = value
        if not (0 < start < 1 and 0 < stop < 1) or steps < 1:
            raise ValueError(f"ugrid {value} needs levels in (0, 1) and at least one step")
        return value

    @model_validator(mode="after")
    def check_command_arguments(self):
        required = {
            Command.EVAL: ("point",),
            Command.SPEARMAN: ("pair",),
            Command.TAILDEP: ("pair",),
            Command.MDP_PATH: ("pair", "ugrid"),
            Command.SIMDEFAULT: ("subset",),
        }.get(self.command, ())
        missing = [name for name in required if getattr(self, name) is None]
        if missing:
            raise ValueError(f"command {self.command.value} requires --{', --'.join(missing)}")
        return self

    def levels(self) -> np.ndarray:
        start, stop, steps = self.ugrid
        return np.linspace(start, stop, int(steps))


class CommandResult(BaseModel):
    """
    Tabular result of a command; metadata carries scalars that are not rows.
    """
    command: Command
    columns: List[str]
    rows: List[List[Any]]
    metadata: Dict[str, Any] = Field(default_factory=dict)

    def records(self) -> List[Dict[str, Any]]:
        return [dict(zip(self.columns, row)) for row in self.rows]


class RunState(TypedDict, total=False):
    """
    State threaded through the graph: configuration in, model loaded,
    result computed, rendered artifact out.
    """
    config: RunConfig
    model: MRFModel
    result: CommandResult
    artifact: str
    artifact_path: Optional[Path]
