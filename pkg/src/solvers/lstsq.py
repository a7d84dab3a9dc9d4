"""Least-squares kernels of the ALS updates."""

import numpy as np
from scipy import linalg

from src.errors import DimensionError, DomainError

RANK_CUTOFF = 1e-12


def _check(a: np.ndarray, b: np.ndarray) -> None:
    if a.ndim != 2 or b.ndim != 2:
        raise DimensionError(f"expected matrices, got shapes {a.shape} and {b.shape}")
    if min(a.shape) < 1 or b.shape[1] < 1:
        raise DomainError(f"empty least-squares problem: A {a.shape}, B {b.shape}")
    if a.shape[0] != b.shape[0]:
        raise DimensionError(f"A has {a.shape[0]} rows but B has {b.shape[0]}")


def solve_ls(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """
    argmin_Z ||A Z - B||_F, column by column.

    Tall full-rank systems go through a pivoted QR factorization. Otherwise
    the minimum-norm solution is returned, with singular values below
    1e-12 relative to the largest treated as zero.
    """
    a = np.asarray(a)
    b = np.asarray(b)
    _check(a, b)
    rows, cols = a.shape
    if rows >= cols:
        q, r, perm = linalg.qr(a, mode="economic", pivoting=True)
        diagonal = np.abs(np.diag(r))
        if diagonal[0] > 0.0 and diagonal[-1] > RANK_CUTOFF * diagonal[0]:
            solution = linalg.solve_triangular(r, q.conj().T @ b)
            result = np.empty_like(solution)
            result[perm] = solution
            return result
    solution, _, _, _ = linalg.lstsq(a, b, cond=RANK_CUTOFF)
    return solution


def solve_ls_real(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """
    Real minimizer of ||A Z - B||_F for complex A and B.

    Solves the stacked real system [Re A; Im A] Z = [Re B; Im B].
    """
    a = np.asarray(a)
    b = np.asarray(b)
    _check(a, b)
    stacked_a = np.vstack([np.real(a), np.imag(a)])
    stacked_b = np.vstack([np.real(b), np.imag(b)])
    return solve_ls(stacked_a, stacked_b)
