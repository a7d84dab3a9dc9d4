"""Dense N-dimensional tensor value type."""

from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np

from src.errors import DimensionError
from src.tensor.indexing import validate_shape


def coerce_scalars(data: np.ndarray) -> np.ndarray:
    """Promote to float64, or complex128 when the input holds complex values."""
    dtype = np.complex128 if np.iscomplexobj(data) else np.float64
    return np.asarray(data, dtype=dtype)


@dataclass(frozen=True, eq=False)
class DenseTensor:
    """
    Immutable dense tensor of real or complex doubles.

    `data` is an ordinary N-d numpy array indexed by 0-based multi-indices.
    Its little-endian flat order (`flat()`) is the Fortran order, which is the
    storage order used by the binary file format.
    """

    data: np.ndarray

    def __post_init__(self) -> None:
        array = np.array(coerce_scalars(self.data), copy=True, order="F")
        if array.ndim == 0:
            raise DimensionError("a tensor needs at least one mode")
        validate_shape(array.shape)
        array.setflags(write=False)
        object.__setattr__(self, "data", array)

    @classmethod
    def from_flat(cls, flat: np.ndarray, shape: Sequence[int]) -> "DenseTensor":
        """Build a tensor from its little-endian linearized entries."""
        dims = validate_shape(shape)
        flat = np.asarray(flat)
        if flat.size != int(np.prod(dims)):
            raise DimensionError(
                f"{flat.size} entries cannot fill a tensor of shape {dims}"
            )
        return cls(flat.reshape(dims, order="F"))

    @classmethod
    def zeros(cls, shape: Sequence[int], complex_: bool = False) -> "DenseTensor":
        dtype = np.complex128 if complex_ else np.float64
        return cls(np.zeros(validate_shape(shape), dtype=dtype))

    @property
    def shape(self) -> Tuple[int, ...]:
        return self.data.shape

    @property
    def order(self) -> int:
        return self.data.ndim

    @property
    def is_complex(self) -> bool:
        return np.iscomplexobj(self.data)

    def flat(self) -> np.ndarray:
        """Entries in little-endian order (offset = linearize(idx) - 1)."""
        return self.data.ravel(order="F")

    def norm(self) -> float:
        return float(np.linalg.norm(self.data.ravel()))

    def to_dense(self) -> "DenseTensor":
        return self
