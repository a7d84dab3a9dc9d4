"""Additive Gaussian noise at a prescribed relative level."""

from typing import Union

import numpy as np

from src.errors import DomainError
from src.sketch import make_rng
from src.tensor import DenseTensor, SparseTensor


def _gaussian(shape, complex_: bool, rng: np.random.Generator) -> np.ndarray:
    noise = rng.standard_normal(shape)
    if complex_:
        noise = (noise + 1j * rng.standard_normal(shape)) / np.sqrt(2.0)
    return noise


def add_noise(
    tensor: Union[DenseTensor, SparseTensor],
    noise: float,
    seed: int,
) -> Union[DenseTensor, SparseTensor]:
    """
    X_true + noise * (||X_true|| / ||N||) * N with Gaussian N.

    The relative perturbation ||X - X_true|| / ||X_true|| equals `noise`.
    Sparse tensors are perturbed on their stored entries only; complex
    tensors get complex Gaussian noise.

    Raises:
        DomainError: On negative noise, or positive noise on a zero tensor
    """
    if noise < 0:
        raise DomainError(f"noise must be nonnegative, got {noise}")
    if noise == 0:
        return tensor

    norm = tensor.norm()
    if norm == 0.0:
        raise DomainError("cannot scale noise relative to a zero tensor")

    rng = make_rng(seed)
    if isinstance(tensor, SparseTensor):
        perturbation = _gaussian(tensor.vals.shape, tensor.is_complex, rng)
        scale = noise * norm / np.linalg.norm(perturbation)
        return tensor.with_values(tensor.vals + scale * perturbation)

    perturbation = _gaussian(tensor.shape, tensor.is_complex, rng)
    scale = noise * norm / np.linalg.norm(perturbation.ravel())
    return DenseTensor(tensor.data + scale * perturbation)
