"""
Synthetic tensor ring data.

Experiment 1 uses Gaussian cores with one large entry per core, experiment 2
sparse Gaussian cores, experiment 3 cores with coherent outlier slices and
experiment 4 complex Gaussian cores with one large entry per core.
"""

from typing import Literal, Optional, Tuple, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from src.ring import TRCores, tr_reconstruct
from src.sketch import make_rng
from src.tensor import DenseTensor, SparseTensor, fold, unfold
from src.utils import get_logger

logger = get_logger(__name__)

SPIKE_VALUE = 20.0
# columns of the mode-2 unfolding replaced by staggered spikes in experiment 3
OUTLIER_COLUMNS = 3
# the core whose rows beyond `spread` are cleared in experiment 3
OUTLIER_CORE = 3


class SynthSpec(BaseModel):
    """Parameters of one synthetic tensor."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    experiment: Literal[1, 2, 3, 4] = 1
    size: int = Field(default=60, ge=1)
    order: int = Field(default=3, ge=2)
    true_rank: int = Field(default=5, ge=1)
    density: float = Field(default=0.05, ge=0.0, le=1.0)
    spread: int = Field(default=15, ge=1)
    magnitude: Optional[float] = None
    seed: int = Field(default=0, ge=0)

    @model_validator(mode="after")
    def _check_experiment(self) -> "SynthSpec":
        if self.experiment == 3:
            if self.size < OUTLIER_COLUMNS * self.spread:
                raise ValueError(
                    f"experiment 3 needs size >= {OUTLIER_COLUMNS} * spread, "
                    f"got size={self.size}, spread={self.spread}"
                )
            if self.true_rank**2 < OUTLIER_COLUMNS:
                raise ValueError("experiment 3 needs true_rank >= 2")
        return self

    @property
    def effective_magnitude(self) -> float:
        if self.magnitude is not None:
            return self.magnitude
        return self.size / 4 - 10

    @property
    def core_shape(self) -> Tuple[int, int, int]:
        return (self.true_rank, self.size, self.true_rank)


def _spiked_cores(spec: SynthSpec, rng: np.random.Generator, complex_: bool) -> list:
    cores = []
    for _ in range(spec.order):
        core = rng.standard_normal(spec.core_shape)
        if complex_:
            core = (core + 1j * rng.standard_normal(spec.core_shape)) / np.sqrt(2.0)
        position = tuple(int(rng.integers(0, d)) for d in spec.core_shape)
        core[position] = SPIKE_VALUE
        cores.append(core)
    return cores


def _sparse_cores(spec: SynthSpec, rng: np.random.Generator) -> list:
    cores = []
    total = int(np.prod(spec.core_shape))
    count = int(round(spec.density * total))
    for _ in range(spec.order):
        flat = np.zeros(total)
        positions = rng.choice(total, size=count, replace=False)
        flat[positions] = rng.standard_normal(count)
        cores.append(flat.reshape(spec.core_shape, order="F"))
    return cores


def _outlier_cores(spec: SynthSpec, rng: np.random.Generator) -> list:
    cores = []
    magnitude = spec.effective_magnitude
    for n in range(1, spec.order + 1):
        core = rng.standard_normal(spec.core_shape)
        matrix = unfold(core, 2, "modeN")
        matrix[:, :OUTLIER_COLUMNS] = 0.0
        if n == min(OUTLIER_CORE, spec.order):
            # rows past `spread` are zero before the spikes go in
            matrix[spec.spread:, :] = 0.0
        for column in range(OUTLIER_COLUMNS):
            matrix[column * spec.spread:(column + 1) * spec.spread, column] = magnitude
        cores.append(fold(matrix, 2, spec.core_shape, "modeN"))
    return cores


def gen_synthetic(spec: SynthSpec) -> Tuple[TRCores, Union[DenseTensor, SparseTensor]]:
    """
    Ground-truth cores and the tensor they represent.

    Experiment 2 returns a SparseTensor holding the nonzero entries.
    """
    rng = make_rng(spec.seed)
    if spec.experiment == 1:
        cores = _spiked_cores(spec, rng, complex_=False)
    elif spec.experiment == 2:
        cores = _sparse_cores(spec, rng)
    elif spec.experiment == 3:
        cores = _outlier_cores(spec, rng)
    else:
        cores = _spiked_cores(spec, rng, complex_=True)

    truth = TRCores(tuple(cores))
    tensor = tr_reconstruct(truth)
    if spec.experiment == 2:
        tensor = SparseTensor.from_dense(tensor)
    logger.info(
        "Generated synthetic tensor",
        experiment=spec.experiment,
        shape=truth.dims,
        true_rank=spec.true_rank,
        seed=spec.seed,
    )
    return truth, tensor
