"""
Per-mode mixing operators F_j D_j: a random sign flip followed by the
unitary DFT, applied with fast transforms and never materialized.

`MixingOperator` is the extension point for other per-mode operators; only
the Fourier instance ships.
"""

from dataclasses import dataclass
from typing import Optional, Protocol, Sequence

import numpy as np
from scipy import fft

from src.errors import DimensionError
from src.tensor import DenseTensor, as_array


class MixingOperator(Protocol):
    size: int

    def mix(self, array: np.ndarray, axis: int) -> np.ndarray:
        """Apply the operator to every fiber along `axis`."""

    def unmix(self, array: np.ndarray, axis: int) -> np.ndarray:
        """Apply the inverse (adjoint) operator along `axis`."""


@dataclass(frozen=True, eq=False)
class SignFlip:
    """Diagonal ±1 operator D_j."""

    values: np.ndarray
    seed: Optional[int] = None

    def __post_init__(self) -> None:
        values = np.asarray(self.values, dtype=np.float64)
        if values.ndim != 1 or not np.all(np.abs(values) == 1.0):
            raise DimensionError("sign flips must be a vector of ±1 entries")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @classmethod
    def draw(cls, size: int, rng: np.random.Generator, seed: Optional[int] = None) -> "SignFlip":
        return cls(rng.choice(np.array([-1.0, 1.0]), size=size), seed)

    @property
    def size(self) -> int:
        return int(self.values.shape[0])

    def apply(self, array: np.ndarray, axis: int) -> np.ndarray:
        shape = [1] * array.ndim
        shape[axis] = self.size
        return array * self.values.reshape(shape)


@dataclass(frozen=True, eq=False)
class FourierMixer:
    """F_j D_j with F_j the unitary DFT of length I_j."""

    flip: SignFlip

    @property
    def size(self) -> int:
        return self.flip.size

    def _check(self, array: np.ndarray, axis: int) -> None:
        if array.shape[axis] != self.size:
            raise DimensionError(
                f"mixer of size {self.size} applied to axis of length {array.shape[axis]}"
            )

    def mix(self, array: np.ndarray, axis: int) -> np.ndarray:
        self._check(array, axis)
        return fft.fft(self.flip.apply(array, axis), axis=axis, norm="ortho")

    def unmix(self, array: np.ndarray, axis: int) -> np.ndarray:
        self._check(array, axis)
        return self.flip.apply(fft.ifft(array, axis=axis, norm="ortho"), axis)

    def matrix(self) -> np.ndarray:
        """Dense F_j D_j, for checks on small sizes."""
        return fft.fft(np.diag(self.flip.values), axis=0, norm="ortho")

    def describe(self) -> str:
        signs = "".join("+" if v > 0 else "-" for v in self.flip.values)
        return f"FourierMixer(size={self.size}, seed={self.flip.seed}, signs={signs})"


def draw_mixers(dims: Sequence[int], rng: np.random.Generator, seed: Optional[int] = None) -> list:
    """One Fourier mixer per mode."""
    return [FourierMixer(SignFlip.draw(size, rng, seed)) for size in dims]


def mix_core(core: np.ndarray, mixer: MixingOperator) -> np.ndarray:
    """G ×₂ (F D): mix the lateral slices of an order-3 core."""
    core = np.asarray(core)
    if core.ndim != 3:
        raise DimensionError(f"core must be order 3, got {core.ndim}")
    return mixer.mix(core, axis=1)


def unmix_core(core: np.ndarray, mixer: MixingOperator) -> np.ndarray:
    """G ×₂ (D F*)."""
    core = np.asarray(core)
    if core.ndim != 3:
        raise DimensionError(f"core must be order 3, got {core.ndim}")
    return mixer.unmix(core, axis=1)


def mix_tensor(tensor, mixers: Sequence[MixingOperator]) -> DenseTensor:
    """X ×₁ (F_1 D_1) ×₂ ... ×_N (F_N D_N)."""
    data = as_array(tensor.to_dense() if hasattr(tensor, "to_dense") else tensor)
    if len(mixers) != data.ndim:
        raise DimensionError(f"{len(mixers)} mixers for a tensor of order {data.ndim}")
    mixed = data.astype(np.complex128)
    for axis, mixer in enumerate(mixers):
        mixed = mixer.mix(mixed, axis=axis)
    return DenseTensor(mixed)
