"""The reproducibility record written into every output."""

from typing import Any

from pydantic import BaseModel, Field


class ExperimentConfig(BaseModel):
    """Command, inputs and knobs of one run; serialized into each output header."""

    command: str = Field(description="Subcommand path, e.g. 'pipeline blockwise'.")
    version: str = Field(description="ipslab version that produced the output.")
    field: str | None = Field(
        default=None, description="Field spec, when the command takes one."
    )
    seed: int | None = Field(default=None)
    trials: int | None = Field(default=None)
    params: dict[str, Any] = Field(
        default_factory=dict,
        description="Remaining command arguments, input paths included.",
    )
    guards: dict[str, Any] = Field(
        default_factory=dict,
        description="Effective configuration (size guards, prime, ...).",
    )
