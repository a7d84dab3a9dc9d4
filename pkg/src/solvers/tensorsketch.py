"""TR-TS-ALS: TensorSketch-compressed ALS updates."""

from typing import Dict, Optional

import numpy as np

from src.errors import DimensionError
from src.ring import TRCores, fold_core, subchain_unfolding
from src.sketch import TensorSketch, ordered_sketch_cores, tensorsketch_rhs, tensorsketch_subchain
from src.utils import get_logger

from .base import ALSSolver, TensorLike
from .config import FitConfig, FitResult
from .lstsq import solve_ls

logger = get_logger(__name__)


class TensorSketchALS(ALSSolver):
    """
    Hashes are drawn once per run and the sketched right-hand sides
    T_{≠n} X_[n]^T are computed once per mode before the first sweep. Sparse
    inputs are sketched from their stored entries.
    """

    name = "tr-ts-als"

    def __init__(self, config: FitConfig, sketch: Optional[TensorSketch] = None):
        super().__init__(config)
        self.sketch = sketch

    def _warn_small_embedding(self) -> None:
        if self.sketch is None:
            super()._warn_small_embedding()

    def prepare(self, tensor) -> None:
        dims = tensor.shape
        if self.sketch is None:
            self.sketch = TensorSketch.draw(dims, self.embedding_size, self.rng, self.config.seed)
        elif self.sketch.order != len(dims):
            raise DimensionError(f"sketch covers {self.sketch.order} modes, tensor has {len(dims)}")
        logger.debug("Drew sketch", solver=self.name, sketch=self.sketch.describe())
        self.rhs: Dict[int, np.ndarray] = {
            n: tensorsketch_rhs(tensor, n, self.sketch) for n in range(1, len(dims) + 1)
        }

    def update(self, cores: TRCores, n: int) -> TRCores:
        ordered, modes = ordered_sketch_cores(cores, n)
        design = subchain_unfolding(tensorsketch_subchain(ordered, self.sketch, modes))
        solution = solve_ls(design, self.rhs[n])
        ranks = cores.ranks
        return cores.replace(n, fold_core(solution.T, ranks[n - 1], ranks[n % cores.order]))


def tr_ts_als(
    tensor: TensorLike,
    config: FitConfig,
    initial: TRCores = None,
    sketch: Optional[TensorSketch] = None,
) -> FitResult:
    """Fit tensor ring cores with TensorSketch-compressed ALS."""
    return TensorSketchALS(config, sketch).fit(tensor, initial)
