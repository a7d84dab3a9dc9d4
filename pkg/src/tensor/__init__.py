"""Dense and sparse tensors, index conventions, products and unfoldings."""

from .dense import DenseTensor
from .sparse import SparseTensor
from .indexing import check_mode, cyclic_modes, delinearize, linearize
from .products import (
    as_array,
    fold,
    frobenius_norm,
    khatri_rao,
    kronecker,
    mode_n_product,
    unfold,
)

__all__ = [
    "DenseTensor",
    "SparseTensor",
    "check_mode",
    "cyclic_modes",
    "delinearize",
    "linearize",
    "as_array",
    "fold",
    "frobenius_norm",
    "khatri_rao",
    "kronecker",
    "mode_n_product",
    "unfold",
]
