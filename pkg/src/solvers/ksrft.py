"""
TR-KSRFT-ALS and its premixed variant.

Both mix every mode once with a random sign flip and a unitary DFT, then
sample lateral slices of the mixed cores uniformly. The regular variant keeps
real cores and re-mixes each core after its update. The premixed variant
solves for the mixed cores directly and unmixes them once at the end.
"""

from typing import Dict, List

import numpy as np

from src.errors import DomainError
from src.ring import TRCores, fold_core, relative_error, subchain_unfolding
from src.sketch import (
    UniformSampler,
    draw_mixers,
    exhaustive_samples,
    ksrft_sketch_rhs,
    mix_core,
    mix_tensor,
    sampled_subchain,
    unmix_core,
)
from src.tensor import DenseTensor, cyclic_modes
from src.utils import get_logger

from .base import ALSSolver, TensorLike
from .config import FitConfig, FitResult
from .lstsq import solve_ls, solve_ls_real

logger = get_logger(__name__)

IMAG_TOLERANCE = 1e-8


class _MixedSamplingALS(ALSSolver):
    """Mixing and slice sampling shared by both KSRFT solvers."""

    def prepare(self, tensor) -> None:
        dims = self.target.shape
        self.mixers = draw_mixers(dims, self.rng, self.config.seed)
        self.mixed = mix_tensor(self.target, self.mixers)
        self.samplers: Dict[int, UniformSampler] = {}
        if self.config.sampling == "random":
            for n in range(1, len(dims) + 1):
                other = tuple(dims[j - 1] for j in cyclic_modes(n, len(dims)))
                self.samplers[n] = UniformSampler(other, self.embedding_size, self.config.seed)
        for mixer in self.mixers:
            logger.debug("Drew mixer", solver=self.name, mixer=mixer.describe())

    def sample(self, n: int) -> np.ndarray:
        if self.config.sampling == "exhaustive":
            dims = self.target.shape
            return exhaustive_samples([dims[j - 1] for j in cyclic_modes(n, len(dims))])
        return self.samplers[n].draw(self.rng)

    def sketched_design(self, mixed_cores: List[np.ndarray], n: int, idxs: np.ndarray) -> np.ndarray:
        order = len(mixed_cores)
        ordered = [mixed_cores[j - 1] for j in cyclic_modes(n, order)]
        return subchain_unfolding(sampled_subchain(idxs, ordered))


class KSRFTALS(_MixedSamplingALS):
    name = "tr-ksrft-als"

    def prepare(self, tensor) -> None:
        if self.target.is_complex:
            raise DomainError(f"{self.name} fits real tensors; use tr-ksrft-als-premix")
        super().prepare(tensor)

    def start(self, cores: TRCores) -> TRCores:
        self.mixed_cores = [
            mix_core(cores.core(n), self.mixers[n - 1]) for n in range(1, cores.order + 1)
        ]
        return cores

    def update(self, cores: TRCores, n: int) -> TRCores:
        idxs = self.sample(n)
        design = self.sketched_design(self.mixed_cores, n, idxs)
        rhs = ksrft_sketch_rhs(self.mixed.data, n, idxs, self.mixers[n - 1])
        solution = solve_ls_real(design, rhs)
        ranks = cores.ranks
        core = fold_core(solution.T, ranks[n - 1], ranks[n % cores.order])
        self.mixed_cores[n - 1] = mix_core(core, self.mixers[n - 1])
        return cores.replace(n, core)


class KSRFTPremixALS(_MixedSamplingALS):
    name = "tr-ksrft-als-premix"

    def start(self, cores: TRCores) -> TRCores:
        return TRCores(
            tuple(mix_core(cores.core(n), self.mixers[n - 1]) for n in range(1, cores.order + 1))
        )

    def update(self, cores: TRCores, n: int) -> TRCores:
        idxs = self.sample(n)
        design = self.sketched_design(list(cores.cores), n, idxs)
        rhs = ksrft_sketch_rhs(self.mixed.data, n, idxs)
        solution = solve_ls(design, rhs)
        ranks = cores.ranks
        return cores.replace(n, fold_core(solution.T, ranks[n - 1], ranks[n % cores.order]))

    def error(self, cores: TRCores) -> float:
        # mixing is unitary, so the mixed residual has the same norm
        return relative_error(cores, self.mixed, self.target_norm)

    def finish(self, cores: TRCores) -> TRCores:
        unmixed = TRCores(
            tuple(unmix_core(cores.core(n), self.mixers[n - 1]) for n in range(1, cores.order + 1))
        )
        if self.target.is_complex:
            return unmixed
        max_imag = unmixed.max_imag()
        self.extras["max_imag"] = max_imag
        if max_imag < IMAG_TOLERANCE:
            return unmixed.real()
        logger.warning(
            "Unmixed cores keep an imaginary part",
            solver=self.name,
            max_imag=max_imag,
            tolerance=IMAG_TOLERANCE,
        )
        return unmixed


def tr_ksrft_als(tensor: TensorLike, config: FitConfig, initial: TRCores = None) -> FitResult:
    """Fit real tensor ring cores with KSRFT-sketched ALS."""
    return KSRFTALS(config).fit(tensor, initial)


def tr_ksrft_als_premix(tensor: TensorLike, config: FitConfig, initial: TRCores = None) -> FitResult:
    """Fit tensor ring cores in the mixed domain and unmix them at the end."""
    return KSRFTPremixALS(config).fit(tensor, initial)
