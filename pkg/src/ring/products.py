"""
Slice-wise products of order-3 tensors along mode 2.

The lateral slice j of an order-3 tensor A is the matrix A[:, j, :].
"""

import numpy as np

from src.errors import DimensionError


def _check_order3(tensor: np.ndarray, name: str) -> np.ndarray:
    tensor = np.asarray(tensor)
    if tensor.ndim != 3:
        raise DimensionError(f"{name} must be an order-3 tensor, got order {tensor.ndim}")
    return tensor


def subchain_product(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """
    Mode-2 subchain product A ⊠₂ B.

    Slice j1 + J1*j2 of the result (0-based, j1 fastest) is A(j1) @ B(j2).

    Args:
        a: Tensor of shape (I1, J1, K)
        b: Tensor of shape (K, J2, I2)

    Returns:
        Tensor of shape (I1, J1*J2, I2)
    """
    a = _check_order3(a, "A")
    b = _check_order3(b, "B")
    if a.shape[2] != b.shape[0]:
        raise DimensionError(
            f"inner dimensions differ: A has {a.shape[2]}, B has {b.shape[0]}"
        )
    product = np.einsum("ajk,kbl->ajbl", a, b)
    return product.reshape(a.shape[0], a.shape[1] * b.shape[1], b.shape[2], order="F")


def slices_hadamard(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """
    Mode-2 slices-Hadamard product A ⊛₂ B: slice j is A(j) @ B(j).

    Args:
        a: Tensor of shape (I1, J, K)
        b: Tensor of shape (K, J, I2)

    Returns:
        Tensor of shape (I1, J, I2)
    """
    a = _check_order3(a, "A")
    b = _check_order3(b, "B")
    if a.shape[1] != b.shape[1]:
        raise DimensionError(f"mode-2 extents differ: {a.shape[1]} and {b.shape[1]}")
    if a.shape[2] != b.shape[0]:
        raise DimensionError(
            f"inner dimensions differ: A has {a.shape[2]}, B has {b.shape[0]}"
        )
    return np.einsum("ajk,kjl->ajl", a, b)


def identity_slices(rows: int, count: int, dtype=np.float64) -> np.ndarray:
    """Order-3 tensor of shape (rows, count, rows) whose every slice is the identity."""
    eye = np.eye(rows, dtype=dtype)
    return np.repeat(eye[:, None, :], count, axis=1)
