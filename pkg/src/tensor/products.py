"""
Matrix and tensor products, unfoldings and norms.

Functions accept plain numpy arrays or `DenseTensor` values. Modes are
1-based. Unfoldings always materialize a copy.
"""

from typing import Literal, Sequence, Union

import numpy as np

from src.errors import DimensionError
from src.tensor.dense import DenseTensor
from src.tensor.indexing import check_mode, cyclic_modes, validate_shape
from src.tensor.sparse import SparseTensor

UnfoldKind = Literal["modeN", "classical"]
TensorLike = Union[np.ndarray, DenseTensor]


def as_array(tensor: TensorLike) -> np.ndarray:
    """Return the underlying ndarray of a tensor-like value."""
    if isinstance(tensor, DenseTensor):
        return tensor.data
    return np.asarray(tensor)


def _as_matrix(matrix: np.ndarray, name: str) -> np.ndarray:
    matrix = np.asarray(matrix)
    if matrix.ndim != 2:
        raise DimensionError(f"{name} must be a matrix, got {matrix.ndim} dimensions")
    return matrix


def kronecker(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """(A ⊗ B)(i2 + I2*(i1-1), j2 + J2*(j1-1)) = A(i1, j1) B(i2, j2)."""
    return np.kron(_as_matrix(a, "A"), _as_matrix(b, "B"))


def khatri_rao(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Column-wise Kronecker product: column j is a_j ⊗ b_j."""
    a = _as_matrix(a, "A")
    b = _as_matrix(b, "B")
    if a.shape[1] != b.shape[1]:
        raise DimensionError(
            f"Khatri-Rao needs equal column counts, got {a.shape[1]} and {b.shape[1]}"
        )
    return (a[:, None, :] * b[None, :, :]).reshape(a.shape[0] * b.shape[0], a.shape[1])


def mode_n_product(tensor: TensorLike, matrix: np.ndarray, n: int) -> np.ndarray:
    """
    Multiply every mode-n fiber of `tensor` by `matrix`.

    Args:
        tensor: Array of shape (I_1, ..., I_N)
        matrix: Matrix of shape (J, I_n)
        n: 1-based mode

    Returns:
        Array with I_n replaced by J
    """
    data = as_array(tensor)
    axis = check_mode(n, data.ndim)
    matrix = _as_matrix(matrix, "U")
    if matrix.shape[1] != data.shape[axis]:
        raise DimensionError(
            f"matrix has {matrix.shape[1]} columns but mode {n} has size {data.shape[axis]}"
        )
    product = np.tensordot(matrix, data, axes=(1, axis))
    return np.moveaxis(product, 0, axis)


def _unfold_axes(order: int, n: int, kind: UnfoldKind) -> list:
    axis = check_mode(n, order)
    if kind == "modeN":
        others = [m - 1 for m in cyclic_modes(n, order)]
    elif kind == "classical":
        others = [a for a in range(order) if a != axis]
    else:
        raise DimensionError(f"unknown unfolding kind {kind!r}")
    return [axis] + others


def unfold(tensor: TensorLike, n: int, kind: UnfoldKind = "modeN") -> np.ndarray:
    """
    Mode-n unfolding of shape I_n x prod_{j != n} I_j.

    "modeN" orders the columns by i_{n+1} ... i_N i_1 ... i_{n-1} and
    "classical" by i_1 ... i_{n-1} i_{n+1} ... i_N, little-endian in both cases.
    """
    data = as_array(tensor)
    axes = _unfold_axes(data.ndim, n, kind)
    permuted = np.transpose(data, axes)
    return np.array(permuted.reshape(data.shape[axes[0]], -1, order="F"))


def fold(matrix: np.ndarray, n: int, shape: Sequence[int], kind: UnfoldKind = "modeN") -> np.ndarray:
    """Inverse of `unfold`."""
    dims = validate_shape(shape)
    matrix = _as_matrix(matrix, "M")
    axes = _unfold_axes(len(dims), n, kind)
    expected = (dims[axes[0]], int(np.prod(dims)) // dims[axes[0]])
    if matrix.shape != expected:
        raise DimensionError(
            f"matrix of shape {matrix.shape} cannot fold to {dims} at mode {n}; expected {expected}"
        )
    permuted = matrix.reshape([dims[a] for a in axes], order="F")
    return np.array(np.transpose(permuted, np.argsort(axes)))


def frobenius_norm(value: Union[TensorLike, SparseTensor]) -> float:
    """Square root of the sum of squared magnitudes."""
    if isinstance(value, SparseTensor):
        return value.norm()
    return float(np.linalg.norm(as_array(value).ravel()))
