"""
Multi-index conventions.

Flat indices follow the little-endian (reverse lexicographic) or big-endian
(colexicographic) ordering. Both functions use 1-based positions so they can
be checked directly against the textbook formulas.
"""

from typing import Literal, Sequence, Tuple

from src.errors import DomainError

Convention = Literal["little", "big"]


def validate_shape(shape: Sequence[int]) -> Tuple[int, ...]:
    """Return `shape` as a tuple after checking every dimension is positive."""
    dims = tuple(int(d) for d in shape)
    if not dims:
        raise DomainError("shape must have at least one dimension")
    if any(d < 1 for d in dims):
        raise DomainError(f"all dimensions must be >= 1, got {dims}")
    return dims


def _ordered(shape: Tuple[int, ...], convention: Convention) -> range:
    if convention == "little":
        return range(len(shape))
    if convention == "big":
        return range(len(shape) - 1, -1, -1)
    raise DomainError(f"unknown convention {convention!r}")


def linearize(
    idx: Sequence[int],
    shape: Sequence[int],
    convention: Convention = "little",
) -> int:
    """
    Map a 1-based multi-index to its 1-based flat position.

    Args:
        idx: Multi-index (i_1, ..., i_N), each 1 <= i_n <= I_n
        shape: Dimensions (I_1, ..., I_N)
        convention: "little" makes i_1 the fastest index, "big" makes i_N fastest

    Returns:
        Flat position in [1, prod(shape)]
    """
    dims = validate_shape(shape)
    if len(idx) != len(dims):
        raise DomainError(f"index of length {len(idx)} does not match order {len(dims)}")
    for pos, (i, d) in enumerate(zip(idx, dims)):
        if not 1 <= int(i) <= d:
            raise DomainError(f"index component {pos + 1} = {i} outside [1, {d}]")

    flat = 0
    stride = 1
    for axis in _ordered(dims, convention):
        flat += (int(idx[axis]) - 1) * stride
        stride *= dims[axis]
    return flat + 1


def delinearize(
    flat: int,
    shape: Sequence[int],
    convention: Convention = "little",
) -> Tuple[int, ...]:
    """Inverse of `linearize`: 1-based flat position to 1-based multi-index."""
    dims = validate_shape(shape)
    total = 1
    for d in dims:
        total *= d
    if not 1 <= int(flat) <= total:
        raise DomainError(f"flat index {flat} outside [1, {total}]")

    rest = int(flat) - 1
    idx = [0] * len(dims)
    for axis in _ordered(dims, convention):
        rest, idx[axis] = divmod(rest, dims[axis])
    return tuple(i + 1 for i in idx)


def cyclic_modes(n: int, order: int) -> Tuple[int, ...]:
    """
    Modes n+1, ..., N, 1, ..., n-1 (1-based).

    This is the column order of the mode-n unfolding and the core order of
    the subchain tensor.
    """
    check_mode(n, order)
    return tuple(((n + k - 1) % order) + 1 for k in range(1, order))


def check_mode(n: int, order: int) -> int:
    """Validate a 1-based mode and return its 0-based axis."""
    if not 1 <= int(n) <= order:
        raise DomainError(f"mode {n} outside [1, {order}]")
    return int(n) - 1
