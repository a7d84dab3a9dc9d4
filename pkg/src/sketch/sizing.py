"""
Heuristic embedding sizes.

The sufficient sizes known for KSRFT and TensorSketch embeddings hide absolute
constants. `recommend_embedding_size` evaluates their dominant expressions with
every constant set to 1, so the result is a starting point for a sweep and not
a guarantee.
"""

import math
from typing import Literal, Sequence

from src.errors import DomainError

SketchKind = Literal["ksrft", "tensorsketch"]


def _check_probability(name: str, value: float) -> None:
    if not 0.0 < value <= 1.0:
        raise DomainError(f"{name} must lie in (0, 1], got {value}")


def recommend_embedding_size(
    kind: SketchKind,
    rank: int,
    next_rank: int,
    order: int,
    other_dims: Sequence[int],
    epsilon: float,
    eta: float,
) -> int:
    """
    Embedding size m for the least-squares update of one core.

    Args:
        kind: "ksrft" or "tensorsketch"
        rank: R_n
        next_rank: R_{n+1}
        order: N
        other_dims: I_j for every j != n; the product caps the result
        epsilon: Accuracy parameter ε
        eta: Failure probability η

    Returns:
        Positive integer, at most prod(other_dims)
    """
    _check_probability("epsilon", epsilon)
    _check_probability("eta", eta)
    if rank < 1 or next_rank < 1 or order < 2:
        raise DomainError("ranks must be >= 1 and the order >= 2")

    r = rank * next_rank
    if kind == "ksrft":
        total = math.prod(other_dims)
        # log factors are clamped at 1 so tiny problems do not collapse to m=0
        log_rows = max(math.log(r / eta), 1.0)
        log_dims = max(math.log(total / eta), 1.0)
        size = r ** (2 * (order - 1)) * log_rows * log_dims**2 / epsilon
    elif kind == "tensorsketch":
        size = (r * 3 ** (order - 1)) * (r + 1.0 / epsilon**2) / eta
    else:
        raise DomainError(f"unknown sketch kind {kind!r}")

    cap = max(math.prod(other_dims), 1)
    return int(min(max(math.ceil(size - 1e-9), 1), cap))
