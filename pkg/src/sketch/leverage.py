"""Leverage-score distributions over the lateral slices of a core."""

from typing import Dict, List

import numpy as np
from scipy import linalg

from src.errors import DimensionError, DomainError
from src.ring import TRCores, core_unfoldings

RANK_CUTOFF = 1e-12


def _orthonormal_basis(matrix: np.ndarray) -> np.ndarray:
    rows, cols = matrix.shape
    if rows >= cols:
        q, r, _ = linalg.qr(matrix, mode="economic", pivoting=True)
        diagonal = np.abs(np.diag(r))
        if diagonal.size and diagonal[-1] > RANK_CUTOFF * diagonal[0]:
            return q
    # wide or numerically rank-deficient: truncated SVD basis
    u, s, _ = linalg.svd(matrix, full_matrices=False)
    rank = int(np.count_nonzero(s > RANK_CUTOFF * s[0]))
    return u[:, :rank]


def leverage_scores(core: np.ndarray) -> np.ndarray:
    """
    Leverage scores of the rows of the classical mode-2 unfolding G_(2).

    Raises:
        DomainError: If the core is identically zero
    """
    core = np.asarray(core)
    if core.ndim != 3:
        raise DimensionError(f"core must be order 3, got {core.ndim}")
    if not np.any(core):
        raise DomainError("leverage scores are undefined for a zero core")
    basis = _orthonormal_basis(core_unfoldings(core).classical)
    return np.sum(np.abs(basis) ** 2, axis=1)


def leverage_distribution(core: np.ndarray) -> np.ndarray:
    """Sampling distribution p(i) = ℓ(i) / Σℓ over the slices of `core`, in float64."""
    scores = leverage_scores(core).astype(np.float64)
    return scores / scores.sum()


def leverage_summary(cores: TRCores) -> List[Dict[str, float]]:
    """
    Per-core coherence statistics.

    `coherence` is max ℓ / mean ℓ: 1 for perfectly spread slices, I_n when one
    slice carries the whole column space.
    """
    summary = []
    for n in range(1, cores.order + 1):
        scores = leverage_scores(cores.core(n))
        summary.append(
            {
                "core": n,
                "rank": float(scores.sum()),
                "max": float(scores.max()),
                "mean": float(scores.mean()),
                "coherence": float(scores.max() / scores.mean()),
            }
        )
    return summary
