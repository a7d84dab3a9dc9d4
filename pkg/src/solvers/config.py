"""Fit configuration and result containers."""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Literal, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator

from src.errors import ConfigurationError
from src.ring import TRCores


class FitConfig(BaseModel):
    """
    Settings shared by every solver.

    `embedding_size` is ignored by TR-ALS. With `sampling="exhaustive"` the
    sampled and KSRFT solvers enumerate every joint index once instead of
    drawing `embedding_size` samples.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    ranks: Tuple[int, ...]
    max_iterations: int = Field(default=500, ge=1)
    tolerance: float = Field(default=1e-6, ge=0.0)
    embedding_size: Optional[int] = Field(default=None, ge=1)
    seed: int = Field(default=0, ge=0)
    track_error: Literal["every", "final"] = "every"
    sampling: Literal["random", "exhaustive"] = "random"

    @field_validator("ranks")
    @classmethod
    def _positive_ranks(cls, ranks: Tuple[int, ...]) -> Tuple[int, ...]:
        if not ranks:
            raise ValueError("at least one rank is required")
        if any(r < 1 for r in ranks):
            raise ValueError(f"ranks must be >= 1, got {ranks}")
        return ranks

    @classmethod
    def build(cls, **values: Any) -> "FitConfig":
        """Validate `values`, raising ConfigurationError instead of pydantic's error."""
        try:
            return cls(**values)
        except ValidationError as exc:
            raise ConfigurationError(str(exc)) from exc


@dataclass
class FitResult:
    """Output of one solver run."""

    cores: TRCores
    errors: List[float]
    iterations: int
    seconds: float
    seed: int
    solver: str
    extras: Dict[str, Any] = field(default_factory=dict)

    @property
    def final_error(self) -> Optional[float]:
        return self.errors[-1] if self.errors else None
