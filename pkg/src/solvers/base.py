"""
Shared alternating least-squares driver.

Each solver subclasses `ALSSolver` and supplies the per-core update; the
driver owns initialization, sweep order, error tracking, termination and
logging. One outer iteration updates cores 1, ..., N in turn.
"""

import time
from abc import ABC, abstractmethod
from typing import Any, Callable, Dict, Optional, Union

import numpy as np

from src.errors import ConfigurationError, DimensionError
from src.ring import TRCores, relative_error
from src.sketch import derive_seed, make_rng
from src.tensor import DenseTensor, SparseTensor
from src.utils import get_logger

from .config import FitConfig, FitResult

logger = get_logger(__name__)

TensorLike = Union[DenseTensor, SparseTensor, np.ndarray]

# independent streams per run: initial cores and sketch draws
INIT_STREAM = 0
SKETCH_STREAM = 1


def as_tensor(tensor: TensorLike) -> Union[DenseTensor, SparseTensor]:
    if isinstance(tensor, (DenseTensor, SparseTensor)):
        return tensor
    return DenseTensor(np.asarray(tensor))


def initial_cores(dims, ranks, seed: int) -> TRCores:
    """Standard normal cores drawn from the run's initialization stream."""
    return TRCores.random(dims, ranks, make_rng(derive_seed(seed, INIT_STREAM)))


class ALSSolver(ABC):
    """Alternating least squares over tensor ring cores."""

    name: str = ""
    randomized: bool = True

    def __init__(self, config: FitConfig):
        self.config = config
        self.rng = make_rng(derive_seed(config.seed, SKETCH_STREAM))
        self.tensor: Optional[Union[DenseTensor, SparseTensor]] = None
        self.target: Optional[DenseTensor] = None
        self.extras: Dict[str, Any] = {}

    @property
    def embedding_size(self) -> int:
        if self.config.embedding_size is None:
            raise ConfigurationError(f"{self.name} needs an embedding size")
        return self.config.embedding_size

    def _check_ranks(self, dims) -> None:
        ranks = self.config.ranks
        if len(ranks) != len(dims):
            raise DimensionError(f"{len(ranks)} ranks for a tensor of order {len(dims)}")
        if len(dims) < 2:
            raise DimensionError("tensor ring fitting needs a tensor of order >= 2")

    def _warn_small_embedding(self) -> None:
        if not self.randomized or self.config.sampling == "exhaustive":
            return
        ranks = self.config.ranks
        order = len(ranks)
        needed = max(ranks[n] * ranks[(n + 1) % order] for n in range(order))
        if self.embedding_size < needed:
            logger.warning(
                "Embedding size below R_n*R_{n+1}; sketched systems are underdetermined",
                solver=self.name,
                embedding_size=self.embedding_size,
                needed=needed,
            )

    def prepare(self, tensor: Union[DenseTensor, SparseTensor]) -> None:
        """Per-run setup before the first sweep (sketch draws, mixing)."""

    def start(self, cores: TRCores) -> TRCores:
        """Map initial cores into the domain the sweeps work in."""
        return cores

    @abstractmethod
    def update(self, cores: TRCores, n: int) -> TRCores:
        """Return `cores` with core n (1-based) re-solved."""

    def error(self, cores: TRCores) -> float:
        return relative_error(cores, self.target, self.target_norm)

    def finish(self, cores: TRCores) -> TRCores:
        """Map working cores back to the cores of the input tensor."""
        return cores

    def fit(self, tensor: TensorLike, initial: Optional[TRCores] = None) -> FitResult:
        """
        Run sweeps until the iteration cap or the error tolerance is reached.

        Args:
            tensor: Dense or sparse input tensor
            initial: Starting cores; drawn from the seed when omitted

        Returns:
            FitResult with the fitted cores of `tensor`
        """
        config = self.config
        self.tensor = as_tensor(tensor)
        self._check_ranks(self.tensor.shape)
        if initial is None:
            initial = initial_cores(self.tensor.shape, config.ranks, config.seed)
        elif initial.dims != tuple(self.tensor.shape) or initial.ranks != tuple(config.ranks):
            raise DimensionError("initial cores do not match the tensor shape and ranks")

        started = time.perf_counter()
        self.target = self.tensor.to_dense()
        self.target_norm = self.target.norm()
        self._warn_small_embedding()
        self.prepare(self.tensor)
        cores = self.start(initial)

        errors = []
        iterations = 0
        for iterations in range(1, config.max_iterations + 1):
            for n in range(1, cores.order + 1):
                cores = self.update(cores, n)
            if config.track_error == "every":
                errors.append(self.error(cores))
                logger.debug(
                    "Sweep finished", solver=self.name, iteration=iterations, rel_error=errors[-1]
                )
                if errors[-1] < config.tolerance:
                    break

        cores = self.finish(cores)
        if config.track_error == "final":
            errors.append(relative_error(cores, self.target, self.target_norm))
        seconds = time.perf_counter() - started

        logger.info(
            f"Fitted {self.name}",
            iterations=iterations,
            seconds=round(seconds, 4),
            rel_error=errors[-1],
        )
        return FitResult(
            cores=cores,
            errors=errors,
            iterations=iterations,
            seconds=seconds,
            seed=config.seed,
            solver=self.name,
            extras=dict(self.extras),
        )


def best_of_restarts(
    solve: Callable[[TensorLike, FitConfig], FitResult],
    tensor: TensorLike,
    config: FitConfig,
    restarts: int,
) -> FitResult:
    """
    Run `restarts` fits with seeds derived from config.seed and keep the one
    with the lowest final error.
    """
    if restarts < 1:
        raise ConfigurationError(f"restarts must be >= 1, got {restarts}")
    best = None
    for restart in range(restarts):
        seed = config.seed if restart == 0 else derive_seed(config.seed, restart)
        result = solve(tensor, config.model_copy(update={"seed": seed}))
        logger.debug("Restart finished", restart=restart, seed=seed, rel_error=result.final_error)
        if best is None or result.final_error < best.final_error:
            best = result
    return best
