"""Tensor ring model: cores, reconstruction, subchains and products."""

from .cores import (
    CoreUnfoldings,
    TRCores,
    core_unfoldings,
    fold_core,
    relative_error,
    subchain_tensor,
    subchain_unfolding,
    tr_reconstruct,
)
from .products import identity_slices, slices_hadamard, subchain_product

__all__ = [
    "CoreUnfoldings",
    "TRCores",
    "core_unfoldings",
    "fold_core",
    "relative_error",
    "subchain_tensor",
    "subchain_unfolding",
    "tr_reconstruct",
    "identity_slices",
    "slices_hadamard",
    "subchain_product",
]
