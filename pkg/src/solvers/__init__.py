"""Tensor ring ALS solvers and their registry."""

from typing import Callable, Dict

from src.errors import ConfigurationError

from .als import TRALS, als_update, tr_als
from .base import ALSSolver, best_of_restarts, initial_cores
from .config import FitConfig, FitResult
from .ksrft import KSRFTALS, KSRFTPremixALS, tr_ksrft_als, tr_ksrft_als_premix
from .lstsq import solve_ls, solve_ls_real
from .sampled import SampledALS, tr_als_sampled
from .tensorsketch import TensorSketchALS, tr_ts_als

SOLVERS: Dict[str, Callable[..., FitResult]] = {
    "tr-als": tr_als,
    "tr-als-sampled": tr_als_sampled,
    "tr-ksrft-als": tr_ksrft_als,
    "tr-ksrft-als-premix": tr_ksrft_als_premix,
    "tr-ts-als": tr_ts_als,
}


def get_solver(name: str) -> Callable[..., FitResult]:
    """Look up a solver function by its registry name."""
    try:
        return SOLVERS[name]
    except KeyError:
        raise ConfigurationError(
            f"unknown solver {name!r}, expected one of {sorted(SOLVERS)}"
        ) from None


__all__ = [
    "SOLVERS",
    "get_solver",
    "ALSSolver",
    "FitConfig",
    "FitResult",
    "KSRFTALS",
    "KSRFTPremixALS",
    "SampledALS",
    "TRALS",
    "TensorSketchALS",
    "als_update",
    "best_of_restarts",
    "initial_cores",
    "solve_ls",
    "solve_ls_real",
    "tr_als",
    "tr_als_sampled",
    "tr_ksrft_als",
    "tr_ksrft_als_premix",
    "tr_ts_als",
]
