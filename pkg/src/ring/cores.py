"""
Tensor ring cores, reconstruction, subchain tensors and the fit objective.

Core n has shape (R_n, I_n, R_{n+1}) with R_{N+1} = R_1. Entry (i_1, ..., i_N)
of the represented tensor is trace(G_1(i_1) G_2(i_2) ... G_N(i_N)).
"""

from dataclasses import dataclass
from functools import reduce
from typing import NamedTuple, Optional, Sequence, Tuple, Union

import numpy as np

from src.errors import DimensionError, DomainError
from src.ring.products import subchain_product
from src.tensor import DenseTensor, SparseTensor, check_mode, cyclic_modes, fold, unfold


@dataclass(frozen=True, eq=False)
class TRCores:
    """Immutable, ring-consistent list of order-3 cores."""

    cores: Tuple[np.ndarray, ...]

    def __post_init__(self) -> None:
        cores = []
        for position, core in enumerate(self.cores, start=1):
            array = np.array(core, dtype=np.complex128 if np.iscomplexobj(core) else np.float64)
            if array.ndim != 3:
                raise DimensionError(f"core {position} has order {array.ndim}, expected 3")
            if min(array.shape) < 1:
                raise DimensionError(f"core {position} has an empty dimension: {array.shape}")
            array.setflags(write=False)
            cores.append(array)
        if not cores:
            raise DimensionError("at least one core is required")
        for position, core in enumerate(cores):
            following = cores[(position + 1) % len(cores)]
            if core.shape[2] != following.shape[0]:
                raise DimensionError(
                    f"core {position + 1} ends with rank {core.shape[2]} but core "
                    f"{(position + 1) % len(cores) + 1} starts with rank {following.shape[0]}"
                )
        object.__setattr__(self, "cores", tuple(cores))

    @classmethod
    def random(
        cls,
        dims: Sequence[int],
        ranks: Sequence[int],
        rng: np.random.Generator,
        complex_: bool = False,
    ) -> "TRCores":
        """Cores with independent standard normal entries."""
        dims, ranks = tuple(dims), tuple(ranks)
        if len(dims) != len(ranks):
            raise DimensionError(f"{len(dims)} dimensions but {len(ranks)} ranks")
        cores = []
        for n, size in enumerate(dims):
            shape = (ranks[n], size, ranks[(n + 1) % len(ranks)])
            core = rng.standard_normal(shape)
            if complex_:
                core = (core + 1j * rng.standard_normal(shape)) / np.sqrt(2.0)
            cores.append(core)
        return cls(tuple(cores))

    @property
    def order(self) -> int:
        return len(self.cores)

    @property
    def dims(self) -> Tuple[int, ...]:
        return tuple(core.shape[1] for core in self.cores)

    @property
    def ranks(self) -> Tuple[int, ...]:
        return tuple(core.shape[0] for core in self.cores)

    @property
    def is_complex(self) -> bool:
        return any(np.iscomplexobj(core) for core in self.cores)

    def __len__(self) -> int:
        return len(self.cores)

    def core(self, n: int) -> np.ndarray:
        """Core n (1-based)."""
        return self.cores[check_mode(n, self.order)]

    def replace(self, n: int, core: np.ndarray) -> "TRCores":
        """Copy with core n (1-based) swapped for `core`."""
        cores = list(self.cores)
        cores[check_mode(n, self.order)] = core
        return TRCores(tuple(cores))

    def rotate(self, shift: int) -> "TRCores":
        """Cyclically rotate the ring so that core 1+shift becomes core 1."""
        shift %= self.order
        return TRCores(self.cores[shift:] + self.cores[:shift])

    def real(self) -> "TRCores":
        return TRCores(tuple(np.real(core) for core in self.cores))

    def max_imag(self) -> float:
        return max(float(np.max(np.abs(np.imag(core)))) for core in self.cores)


def _ordered_product(cores: Sequence[np.ndarray]) -> np.ndarray:
    return reduce(subchain_product, cores)


def tr_reconstruct(cores: TRCores) -> DenseTensor:
    """Full tensor represented by `cores`."""
    chain = _ordered_product(cores.cores)
    entries = np.einsum("aja->j", chain)
    return DenseTensor.from_flat(entries, cores.dims)


def subchain_tensor(cores: TRCores, n: int) -> np.ndarray:
    """
    Merge every core except core n.

    Returns:
        Tensor of shape (R_{n+1}, prod_{j != n} I_j, R_n) whose slice at the
        little-endian index of (i_{n+1}, ..., i_N, i_1, ..., i_{n-1}) is
        G_{n+1}(i_{n+1}) ... G_N(i_N) G_1(i_1) ... G_{n-1}(i_{n-1}).
    """
    if cores.order < 2:
        raise DomainError("a subchain needs at least two cores")
    return _ordered_product([cores.core(j) for j in cyclic_modes(n, cores.order)])


def subchain_unfolding(subchain: np.ndarray) -> np.ndarray:
    """
    Mode-2 unfolding G_[2] of an order-3 subchain tensor.

    Row j is the vectorized slice j with column index r_n + R_n * r_{n+1}, so
    the design matrix multiplies the classical unfolding of core n.
    """
    return unfold(subchain, 2, "modeN")


class CoreUnfoldings(NamedTuple):
    classical: np.ndarray
    cyclic: np.ndarray


def core_unfoldings(core: np.ndarray) -> CoreUnfoldings:
    """
    Both mode-2 unfoldings of a core.

    `classical` is G_(2) with G_(2)(i, r1 + R_n*r2) = G(r1, i, r2); it is the
    unknown of every least-squares update. `cyclic` is G_[2].
    """
    core = np.asarray(core)
    if core.ndim != 3:
        raise DimensionError(f"core must be order 3, got {core.ndim}")
    return CoreUnfoldings(unfold(core, 2, "classical"), unfold(core, 2, "modeN"))


def fold_core(matrix: np.ndarray, rank: int, next_rank: int) -> np.ndarray:
    """Rebuild a (rank, I, next_rank) core from its classical mode-2 unfolding."""
    return fold(matrix, 2, (rank, matrix.shape[0], next_rank), "classical")


def relative_error(
    cores: TRCores,
    tensor: Union[DenseTensor, SparseTensor],
    tensor_norm: Optional[float] = None,
) -> float:
    """
    ||TR(cores) - X||_F / ||X||_F via full reconstruction.

    Args:
        cores: Candidate decomposition
        tensor: Target tensor
        tensor_norm: Precomputed ||X||_F, reused across iterations
    """
    target = tensor.to_dense()
    if target.shape != cores.dims:
        raise DimensionError(f"cores represent {cores.dims}, tensor has shape {target.shape}")
    norm = target.norm() if tensor_norm is None else tensor_norm
    if norm == 0.0:
        raise DomainError("relative error is undefined for a zero tensor")
    residual = tr_reconstruct(cores).data - target.data
    return float(np.linalg.norm(residual.ravel()) / norm)
