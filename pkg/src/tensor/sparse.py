"""
Coordinate-format sparse tensor.

Subscripts are held as a 0-based (nnz, N) integer array, the way numpy code
indexes arrays; `from_entries` and the text file format use 1-based indices.
"""

from dataclasses import dataclass
from typing import Iterable, Sequence, Tuple

import numpy as np

from src.errors import DimensionError, DomainError
from src.tensor.dense import DenseTensor, coerce_scalars
from src.tensor.indexing import validate_shape


@dataclass(frozen=True, eq=False)
class SparseTensor:
    """
    Immutable COO tensor.

    Duplicate subscripts are summed on construction, so every stored
    multi-index is unique. Entries are kept sorted by little-endian offset.
    """

    shape: Tuple[int, ...]
    subs: np.ndarray
    vals: np.ndarray

    def __post_init__(self) -> None:
        dims = validate_shape(self.shape)
        subs = np.asarray(self.subs, dtype=np.int64).reshape(-1, len(dims))
        vals = coerce_scalars(np.asarray(self.vals).ravel())
        if subs.shape[0] != vals.shape[0]:
            raise DimensionError(
                f"{subs.shape[0]} subscripts but {vals.shape[0]} values"
            )
        if subs.size and ((subs < 0).any() or (subs >= np.array(dims)).any()):
            raise DomainError(f"subscripts out of range for shape {dims}")

        if subs.size:
            offsets = np.ravel_multi_index(subs.T, dims, order="F")
        else:
            offsets = np.zeros(0, dtype=np.int64)
        unique, inverse = np.unique(offsets, return_inverse=True)
        summed = np.zeros(unique.shape[0], dtype=vals.dtype)
        np.add.at(summed, inverse, vals)
        canonical = np.zeros((unique.shape[0], len(dims)), dtype=np.int64)
        if unique.size:
            canonical[:] = np.stack(np.unravel_index(unique, dims, order="F"), axis=1)
        canonical.setflags(write=False)
        summed.setflags(write=False)
        object.__setattr__(self, "shape", dims)
        object.__setattr__(self, "subs", canonical)
        object.__setattr__(self, "vals", summed)

    @classmethod
    def from_entries(
        cls,
        shape: Sequence[int],
        entries: Iterable[Tuple[Sequence[int], complex]],
    ) -> "SparseTensor":
        """Build from (1-based multi-index, value) pairs."""
        dims = validate_shape(shape)
        subs, vals = [], []
        for idx, value in entries:
            if len(idx) != len(dims):
                raise DomainError(f"index {tuple(idx)} does not match order {len(dims)}")
            subs.append([int(i) - 1 for i in idx])
            vals.append(value)
        return cls(dims, np.array(subs, dtype=np.int64).reshape(-1, len(dims)), np.array(vals))

    @classmethod
    def from_dense(cls, tensor: DenseTensor, tol: float = 0.0) -> "SparseTensor":
        """Keep the entries of `tensor` whose magnitude exceeds `tol`."""
        mask = np.abs(tensor.data) > tol
        subs = np.argwhere(mask)
        return cls(tensor.shape, subs, tensor.data[mask])

    @property
    def order(self) -> int:
        return len(self.shape)

    @property
    def nnz(self) -> int:
        return int(self.vals.shape[0])

    @property
    def is_complex(self) -> bool:
        return np.iscomplexobj(self.vals)

    def with_values(self, vals: np.ndarray) -> "SparseTensor":
        """Same sparsity pattern, new stored values."""
        return SparseTensor(self.shape, self.subs, vals)

    def to_dense(self) -> DenseTensor:
        data = np.zeros(self.shape, dtype=self.vals.dtype)
        if self.nnz:
            data[tuple(self.subs.T)] = self.vals
        return DenseTensor(data)

    def norm(self) -> float:
        return float(np.linalg.norm(self.vals))
