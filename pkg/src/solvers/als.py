"""Deterministic TR-ALS: every update solves the full least-squares problem."""

from typing import Dict

import numpy as np

from src.ring import TRCores, fold_core, subchain_tensor, subchain_unfolding
from src.tensor import unfold

from .base import ALSSolver, TensorLike
from .config import FitConfig, FitResult
from .lstsq import solve_ls


def als_update(cores: TRCores, n: int, rhs: np.ndarray) -> TRCores:
    """
    Exact update of core n.

    Args:
        cores: Current cores
        n: Core to re-solve (1-based)
        rhs: X_[n]^T
    """
    design = subchain_unfolding(subchain_tensor(cores, n))
    solution = solve_ls(design, rhs)
    ranks = cores.ranks
    return cores.replace(n, fold_core(solution.T, ranks[n - 1], ranks[n % cores.order]))


class TRALS(ALSSolver):
    name = "tr-als"
    randomized = False

    def prepare(self, tensor) -> None:
        data = self.target.data
        self.rhs: Dict[int, np.ndarray] = {
            n: unfold(data, n, "modeN").T for n in range(1, data.ndim + 1)
        }

    def update(self, cores: TRCores, n: int) -> TRCores:
        return als_update(cores, n, self.rhs[n])


def tr_als(tensor: TensorLike, config: FitConfig, initial: TRCores = None) -> FitResult:
    """Fit tensor ring cores with deterministic alternating least squares."""
    return TRALS(config).fit(tensor, initial)
