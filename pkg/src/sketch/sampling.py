"""
Slice sampling: joint index tables, the sampled subchain tensor (SST) and
the sampled right-hand sides of the KSRFT and leverage-sampled solvers.

Index tables are 0-based integer arrays of shape (m, N-1); column k holds the
sampled indices of the k-th core in the order n+1, ..., N, 1, ..., n-1.
"""

from dataclasses import dataclass
from typing import Optional, Sequence, Union

import numpy as np

from src.errors import DimensionError, DomainError
from src.ring.products import slices_hadamard
from src.sketch.mixing import MixingOperator

Distribution = Union[int, np.ndarray]


def draw_joint_samples(
    dists: Sequence[Distribution],
    m: int,
    rng: np.random.Generator,
) -> np.ndarray:
    """
    Draw m joint indices, each column independently and with replacement.

    Args:
        dists: Per column either an int I_j (uniform over [I_j]) or a
            probability vector over [I_j]
        m: Number of samples
        rng: Caller-owned generator

    Returns:
        Index table of shape (m, len(dists))
    """
    if m < 1:
        raise DomainError(f"embedding size must be >= 1, got {m}")
    table = np.empty((m, len(dists)), dtype=np.int64)
    for column, dist in enumerate(dists):
        if np.ndim(dist) == 0:
            table[:, column] = rng.integers(0, int(dist), size=m)
        else:
            probs = np.asarray(dist, dtype=np.float64)
            table[:, column] = rng.choice(probs.shape[0], size=m, replace=True, p=probs)
    return table


def exhaustive_samples(dims: Sequence[int]) -> np.ndarray:
    """Every joint index exactly once, in little-endian order."""
    total = int(np.prod(dims))
    return np.stack(np.unravel_index(np.arange(total), tuple(dims), order="F"), axis=1)


def joint_probabilities(idxs: np.ndarray, dists: Sequence[np.ndarray]) -> np.ndarray:
    """Probability of each sampled row under independent per-column distributions."""
    probs = np.ones(idxs.shape[0])
    for column, dist in enumerate(dists):
        probs *= np.asarray(dist)[idxs[:, column]]
    return probs


@dataclass(frozen=True)
class UniformSampler:
    """Uniform slice sampler of a KSRFT: m indices per mode, with replacement."""

    dims: tuple
    m: int
    seed: Optional[int] = None

    def draw(self, rng: np.random.Generator) -> np.ndarray:
        return draw_joint_samples(self.dims, self.m, rng)

    def describe(self) -> str:
        return f"UniformSampler(m={self.m}, dims={self.dims}, seed={self.seed})"


def _check_table(idxs: np.ndarray, dims: Sequence[int]) -> np.ndarray:
    idxs = np.asarray(idxs, dtype=np.int64)
    if idxs.ndim != 2 or idxs.shape[1] != len(dims):
        raise DimensionError(f"index table of shape {idxs.shape} does not cover {len(dims)} modes")
    if idxs.size and ((idxs < 0).any() or (idxs >= np.asarray(dims)).any()):
        raise DomainError(f"sampled indices out of range for dimensions {tuple(dims)}")
    return idxs


def sampled_subchain(idxs: np.ndarray, cores: Sequence[np.ndarray]) -> np.ndarray:
    """
    Sampled subchain tensor.

    Args:
        idxs: Index table of shape (m, N-1)
        cores: The N-1 cores in the order n+1, ..., N, 1, ..., n-1

    Returns:
        Tensor of shape (R_{n+1}, m, R_n) whose slice j is the product of the
        sampled slices G_k(idxs[j, k]) over the ordered cores
    """
    if not cores:
        raise DimensionError("at least one core is required")
    idxs = _check_table(idxs, [core.shape[1] for core in cores])
    result = cores[0][:, idxs[:, 0], :]
    for column, core in enumerate(cores[1:], start=1):
        result = slices_hadamard(result, core[:, idxs[:, column], :])
    return result


def sampled_rows(data: np.ndarray, n: int, idxs: np.ndarray) -> np.ndarray:
    """
    Rows of X_[n]^T selected by an index table over the modes other than n.

    Returns:
        Matrix of shape (m, I_n)
    """
    order = data.ndim
    modes = [((n + k - 1) % order) for k in range(1, order)]
    idxs = _check_table(idxs, [data.shape[a] for a in modes])
    moved = np.moveaxis(data, n - 1, -1)
    # axes of `moved` keep their relative order, so shift those after n-1
    positions = [a if a < n - 1 else a - 1 for a in modes]
    index = [None] * (order - 1)
    for column, position in enumerate(positions):
        index[position] = idxs[:, column]
    return moved[tuple(index)]


def ksrft_sketch_rhs(
    mixed: np.ndarray,
    n: int,
    idxs: np.ndarray,
    unmixer: Optional[MixingOperator] = None,
) -> np.ndarray:
    """
    S X̂_[n]^T, optionally followed by the mode-n unmixer (D_n F_n*)^T.

    The premix variant passes no unmixer.
    """
    rows = sampled_rows(np.asarray(mixed), n, idxs)
    if unmixer is None:
        return rows
    return unmixer.unmix(rows, axis=1)
