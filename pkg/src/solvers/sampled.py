"""TR-ALS with leverage-score sampling of lateral slices."""

from typing import Dict, List

import numpy as np

from src.ring import TRCores, fold_core, subchain_unfolding
from src.sketch import (
    draw_joint_samples,
    exhaustive_samples,
    joint_probabilities,
    leverage_distribution,
    sampled_rows,
    sampled_subchain,
)
from src.tensor import cyclic_modes
from src.utils import get_logger

from .base import ALSSolver, TensorLike
from .config import FitConfig, FitResult
from .lstsq import solve_ls

logger = get_logger(__name__)


class SampledALS(ALSSolver):
    """
    Each update samples m joint slice indices, mode by mode, from the
    leverage-score distributions of the other cores. Sampled rows are scaled
    by 1/sqrt(m p(i)); the exhaustive regime uses every joint index once with
    unit weights.
    """

    name = "tr-als-sampled"

    def start(self, cores: TRCores) -> TRCores:
        self.dists: Dict[int, np.ndarray] = {
            n: leverage_distribution(cores.core(n)) for n in range(1, cores.order + 1)
        }
        exhaustive = self.config.sampling == "exhaustive"
        rows = {}
        for n in range(1, cores.order + 1):
            other = [cores.dims[j - 1] for j in cyclic_modes(n, cores.order)]
            rows[n] = int(np.prod(other)) if exhaustive else self.embedding_size
        logger.debug("Sampling plan", solver=self.name, sampling=self.config.sampling, rows=rows)
        return cores

    def sample(self, n: int, dims: List[int]) -> tuple:
        """Index table over the modes other than n and the row weights."""
        modes = cyclic_modes(n, len(self.dists))
        if self.config.sampling == "exhaustive":
            idxs = exhaustive_samples([dims[j - 1] for j in modes])
            return idxs, np.ones(idxs.shape[0])
        dists = [self.dists[j] for j in modes]
        idxs = draw_joint_samples(dists, self.embedding_size, self.rng)
        probs = joint_probabilities(idxs, dists)
        return idxs, 1.0 / np.sqrt(self.embedding_size * probs)

    def update(self, cores: TRCores, n: int) -> TRCores:
        idxs, weights = self.sample(n, list(cores.dims))
        ordered = [cores.core(j) for j in cyclic_modes(n, cores.order)]
        design = subchain_unfolding(sampled_subchain(idxs, ordered)) * weights[:, None]
        rhs = sampled_rows(self.target.data, n, idxs) * weights[:, None]
        solution = solve_ls(design, rhs)
        ranks = cores.ranks
        core = fold_core(solution.T, ranks[n - 1], ranks[n % cores.order])
        # refresh p_n right after core n changes
        self.dists[n] = leverage_distribution(core)
        return cores.replace(n, core)


def tr_als_sampled(tensor: TensorLike, config: FitConfig, initial: TRCores = None) -> FitResult:
    """Fit tensor ring cores with leverage-score sampled ALS."""
    return SampledALS(config).fit(tensor, initial)
