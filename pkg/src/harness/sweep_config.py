"""
Sweep configuration.

A sweep file is flat `KEY=VALUE` text with `#` comments, read with
python-dotenv. Lists (SOLVERS, NOISE) are comma separated. Keys left out fall
back to the environment settings, then to the model defaults.
"""

from pathlib import Path
from typing import Dict, Literal, Optional, Tuple, Union

from dotenv import dotenv_values
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from config.settings import get_settings
from src.errors import ConfigurationError
from src.solvers import SOLVERS
from src.utils import get_logger

from .synthetic import SynthSpec

logger = get_logger(__name__)

DEFAULT_SOLVERS = ("tr-als", "tr-als-sampled", "tr-ksrft-als", "tr-ts-als")


class SweepSpec(BaseModel):
    """Two-stage embedding-size sweep."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    # data
    experiment: int = 1
    size: int = 60
    order: int = 3
    true_rank: int = 5
    density: float = 0.05
    spread: int = 15
    magnitude: Optional[float] = None
    input: Optional[Path] = None

    # fitting
    rank: Optional[int] = Field(default=None, ge=1)
    solvers: Tuple[str, ...] = DEFAULT_SOLVERS
    j_init: int = Field(default=100, ge=1)
    j_inc: int = Field(default=100, ge=1)
    j_fin: int = Field(default=1000, ge=1)
    trials: int = Field(default=10, ge=1)
    noise: Tuple[float, ...] = (0.0,)
    seed: int = Field(default=0, ge=0)
    max_iterations: int = Field(default=500, ge=1)
    tolerance: float = Field(default=1e-6, ge=0.0)
    mode: Literal["grid", "threshold"] = "grid"
    threshold: float = Field(default=1.1, gt=0.0)
    timing: bool = True

    @field_validator("solvers")
    @classmethod
    def _known_solvers(cls, solvers: Tuple[str, ...]) -> Tuple[str, ...]:
        unknown = [s for s in solvers if s not in SOLVERS]
        if unknown:
            raise ValueError(f"unknown solvers {unknown}, expected some of {sorted(SOLVERS)}")
        if not solvers:
            raise ValueError("at least one solver is required")
        return solvers

    @field_validator("noise")
    @classmethod
    def _nonnegative_noise(cls, noise: Tuple[float, ...]) -> Tuple[float, ...]:
        if not noise or any(level < 0 for level in noise):
            raise ValueError(f"noise levels must be nonnegative, got {noise}")
        return noise

    @model_validator(mode="after")
    def _check_grid(self) -> "SweepSpec":
        if self.j_init > self.j_fin:
            raise ValueError(f"J_INIT={self.j_init} exceeds J_FIN={self.j_fin}")
        if self.mode == "threshold" and "tr-als" not in self.solvers:
            raise ValueError("threshold mode needs tr-als as the reference solver")
        return self

    @property
    def synth(self) -> SynthSpec:
        return SynthSpec(
            experiment=self.experiment,
            size=self.size,
            order=self.order,
            true_rank=self.true_rank,
            density=self.density,
            spread=self.spread,
            magnitude=self.magnitude,
            seed=self.seed,
        )

    @property
    def target_rank(self) -> int:
        return self.rank if self.rank is not None else self.true_rank

    def embedding_sizes(self) -> list:
        return list(range(self.j_init, self.j_fin + 1, self.j_inc))


_LIST_KEYS = {"solvers", "noise"}


def _parse(raw: Dict[str, Optional[str]]) -> Dict[str, object]:
    values: Dict[str, object] = {}
    for key, value in raw.items():
        name = key.strip().lower()
        if name not in SweepSpec.model_fields:
            raise ConfigurationError(f"unknown sweep key {key!r}")
        if value is None or value.strip() == "":
            continue
        if name in _LIST_KEYS:
            values[name] = tuple(item.strip() for item in value.split(",") if item.strip())
        else:
            values[name] = value.strip()
    return values


def build_sweep(values: Dict[str, object]) -> SweepSpec:
    """Merge `values` over the settings defaults and validate."""
    settings = get_settings()
    merged = {
        "j_init": settings.sweep.j_init,
        "j_inc": settings.sweep.j_inc,
        "j_fin": settings.sweep.j_fin,
        "trials": settings.sweep.trials,
        "max_iterations": settings.solver.max_iterations,
        "tolerance": settings.solver.tolerance,
        "seed": settings.solver.seed,
    }
    merged.update(values)
    try:
        return SweepSpec(**merged)
    except ValidationError as exc:
        raise ConfigurationError(str(exc)) from exc


def load_sweep_config(path: Union[str, Path]) -> SweepSpec:
    """Read and validate a sweep file."""
    path = Path(path)
    if not path.is_file():
        raise ConfigurationError(f"sweep config not found: {path}")
    spec = build_sweep(_parse(dotenv_values(path)))
    logger.debug("Loaded sweep config", path=str(path), **spec.model_dump(mode="json"))
    return spec
