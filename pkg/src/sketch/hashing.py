"""
k-wise independent hashing, CountSketch and TensorSketch.

A k-wise independent hash is a polynomial of degree k-1 with coefficients
drawn uniformly from the prime field of order 2**61 - 1. Bucket hashes reduce
the field value modulo m; sign hashes map its parity to ±1. Buckets are
0-based here, so the combined bucket of a joint index is the plain sum of
per-mode buckets modulo m.
"""

from dataclasses import dataclass, field
from functools import cached_property
from typing import List, Literal, Optional, Sequence, Tuple, Union

import numpy as np
from scipy import fft, sparse

from src.errors import DimensionError, DomainError
from src.ring.products import slices_hadamard
from src.tensor import DenseTensor, SparseTensor, as_array, cyclic_modes, unfold

MERSENNE_61 = (1 << 61) - 1


@dataclass(frozen=True)
class KWiseHash:
    """Polynomial hash of [domain] into [buckets] or into {-1, +1}."""

    coefficients: Tuple[int, ...]
    domain: int
    buckets: int
    kind: Literal["bucket", "sign"] = "bucket"
    seed: Optional[int] = None

    @classmethod
    def draw(
        cls,
        degree: int,
        domain: int,
        buckets: int,
        rng: np.random.Generator,
        kind: Literal["bucket", "sign"] = "bucket",
        seed: Optional[int] = None,
    ) -> "KWiseHash":
        """
        Draw a `degree`-wise independent hash.

        Args:
            degree: Independence k (3 for buckets, 4 for signs in TensorSketch)
            domain: Number of keys I
            buckets: Range size m (ignored for sign hashes)
            rng: Caller-owned generator
            kind: "bucket" or "sign"
        """
        if degree < 1:
            raise DomainError(f"hash degree must be >= 1, got {degree}")
        if domain < 1 or buckets < 1:
            raise DomainError("hash domain and range must be non-empty")
        coefficients = tuple(int(c) for c in rng.integers(0, MERSENNE_61, size=degree))
        return cls(coefficients, int(domain), int(buckets), kind, seed)

    def field_value(self, key: int) -> int:
        """Polynomial evaluated at key+1 over the prime field (Horner)."""
        x = int(key) + 1
        value = 0
        for coefficient in self.coefficients:
            value = (value * x + coefficient) % MERSENNE_61
        return value

    @cached_property
    def table(self) -> np.ndarray:
        """Hash value of every key in [0, domain)."""
        values = [self.field_value(key) for key in range(self.domain)]
        if self.kind == "sign":
            table = np.array([1.0 - 2.0 * (v & 1) for v in values])
        else:
            table = np.array([v % self.buckets for v in values], dtype=np.int64)
        table.setflags(write=False)
        return table

    def __call__(self, keys: Union[int, np.ndarray]) -> np.ndarray:
        return self.table[np.asarray(keys)]


def countsketch_matrix(buckets: np.ndarray, signs: np.ndarray, m: int) -> sparse.csr_matrix:
    """Ω D as an (m, I) sparse matrix."""
    buckets = np.asarray(buckets)
    size = buckets.shape[0]
    return sparse.coo_matrix(
        (np.asarray(signs, dtype=np.float64), (buckets, np.arange(size))),
        shape=(m, size),
    ).tocsr()


def countsketch_core(core: np.ndarray, buckets: np.ndarray, signs: np.ndarray, m: int) -> np.ndarray:
    """
    G ×₂ (Ω D): slice h is the signed sum of the slices hashed to h.

    Returns:
        Tensor of shape (R, m, R')
    """
    core = np.asarray(core)
    if core.ndim != 3:
        raise DimensionError(f"core must be order 3, got {core.ndim}")
    if np.asarray(buckets).shape[0] != core.shape[1]:
        raise DimensionError(
            f"hash domain {np.asarray(buckets).shape[0]} does not match core dimension {core.shape[1]}"
        )
    rows = np.moveaxis(core, 1, 0).reshape(core.shape[1], -1)
    sketched = countsketch_matrix(buckets, signs, m) @ rows
    return np.moveaxis(sketched.reshape(m, core.shape[0], core.shape[2]), 0, 1)


@dataclass(frozen=True, eq=False)
class TensorSketch:
    """
    Per-mode CountSketch pairs (H_j, S_j) sharing the range m.

    `buckets[j]` and `signs[j]` tabulate H_j and S_j for mode j+1. Drawn
    sketches also keep the hash objects for diagnostics.
    """

    m: int
    buckets: Tuple[np.ndarray, ...]
    signs: Tuple[np.ndarray, ...]
    seed: Optional[int] = None
    hashes: Tuple[Tuple[KWiseHash, KWiseHash], ...] = field(default=())

    def __post_init__(self) -> None:
        if self.m < 1:
            raise DomainError(f"embedding size must be >= 1, got {self.m}")
        if len(self.buckets) != len(self.signs):
            raise DimensionError("one bucket table and one sign table are needed per mode")
        buckets, signs = [], []
        for table, sign in zip(self.buckets, self.signs):
            table = np.asarray(table, dtype=np.int64)
            sign = np.asarray(sign, dtype=np.float64)
            if table.shape != sign.shape:
                raise DimensionError("bucket and sign tables of a mode must have equal length")
            if table.size and (table.min() < 0 or table.max() >= self.m):
                raise DimensionError(f"bucket values must lie in [0, {self.m})")
            buckets.append(table)
            signs.append(sign)
        object.__setattr__(self, "buckets", tuple(buckets))
        object.__setattr__(self, "signs", tuple(signs))

    @classmethod
    def draw(
        cls,
        dims: Sequence[int],
        m: int,
        rng: np.random.Generator,
        seed: Optional[int] = None,
    ) -> "TensorSketch":
        """3-wise independent bucket hashes and 4-wise independent sign hashes per mode."""
        hashes = tuple(
            (
                KWiseHash.draw(3, size, m, rng, "bucket", seed),
                KWiseHash.draw(4, size, 2, rng, "sign", seed),
            )
            for size in dims
        )
        return cls(
            m=m,
            buckets=tuple(h.table for h, _ in hashes),
            signs=tuple(s.table for _, s in hashes),
            seed=seed,
            hashes=hashes,
        )

    @property
    def order(self) -> int:
        return len(self.buckets)

    def combined(self, modes: Sequence[int]) -> Tuple[np.ndarray, np.ndarray]:
        """
        Combined H and S over the little-endian joint index of `modes` (1-based,
        first mode fastest): H = sum of buckets mod m, S = product of signs.
        """
        bucket = np.zeros(1, dtype=np.int64)
        sign = np.ones(1)
        for mode in modes:
            bucket = (bucket[:, None] + self.buckets[mode - 1][None, :]).ravel(order="F") % self.m
            sign = (sign[:, None] * self.signs[mode - 1][None, :]).ravel(order="F")
        return bucket, sign

    def describe(self) -> str:
        lines = [f"TensorSketch(m={self.m}, order={self.order}, seed={self.seed})"]
        for mode, pair in enumerate(self.hashes, start=1):
            bucket_hash, sign_hash = pair
            lines.append(
                f"  mode {mode}: H coefficients={bucket_hash.coefficients} "
                f"S coefficients={sign_hash.coefficients}"
            )
        return "\n".join(lines)


def tensorsketch_subchain(
    cores: Sequence[np.ndarray],
    sketch: TensorSketch,
    modes: Sequence[int],
) -> np.ndarray:
    """
    TensorSketch of the subchain built from `cores` without forming it.

    Each core is count-sketched along mode 2, transformed by a length-m FFT,
    multiplied slice-wise, and transformed back.

    Args:
        cores: Cores in chain order (n+1, ..., N, 1, ..., n-1)
        sketch: Hash family
        modes: The 1-based modes of `cores`, same order

    Returns:
        Tensor of shape (R_{n+1}, m, R_n)
    """
    if len(cores) != len(modes) or not cores:
        raise DimensionError("one mode label is needed per core")
    sketched = [
        countsketch_core(core, sketch.buckets[mode - 1], sketch.signs[mode - 1], sketch.m)
        for core, mode in zip(cores, modes)
    ]
    if len(sketched) == 1:
        return sketched[0]

    spectrum = fft.fft(sketched[0], axis=1)
    for factor in sketched[1:]:
        spectrum = slices_hadamard(spectrum, fft.fft(factor, axis=1))
    result = fft.ifft(spectrum, axis=1)
    if not any(np.iscomplexobj(core) for core in cores):
        result = result.real
    return result


def tensorsketch_rhs(
    tensor: Union[DenseTensor, SparseTensor, np.ndarray],
    n: int,
    sketch: TensorSketch,
) -> np.ndarray:
    """
    T_{≠n} X_[n]^T as an (m, I_n) matrix.

    Sparse tensors are sketched entry by entry, at a cost proportional to nnz.
    """
    order = tensor.order if isinstance(tensor, (DenseTensor, SparseTensor)) else np.ndim(tensor)
    modes = cyclic_modes(n, order)
    if sketch.order != order:
        raise DimensionError(f"sketch covers {sketch.order} modes, tensor has {order}")

    if isinstance(tensor, SparseTensor):
        bucket = np.zeros(tensor.nnz, dtype=np.int64)
        sign = np.ones(tensor.nnz)
        for mode in modes:
            bucket = (bucket + sketch.buckets[mode - 1][tensor.subs[:, mode - 1]]) % sketch.m
            sign = sign * sketch.signs[mode - 1][tensor.subs[:, mode - 1]]
        return sparse.coo_matrix(
            (sign * tensor.vals, (bucket, tensor.subs[:, n - 1])),
            shape=(sketch.m, tensor.shape[n - 1]),
        ).toarray()

    rows = unfold(as_array(tensor), n, "modeN").T
    bucket, sign = sketch.combined(modes)
    omega = sparse.coo_matrix(
        (sign, (bucket, np.arange(rows.shape[0]))), shape=(sketch.m, rows.shape[0])
    ).tocsr()
    return np.asarray(omega @ rows)


def ordered_sketch_cores(cores, n: int) -> Tuple[List[np.ndarray], Tuple[int, ...]]:
    """Cores other than n in chain order, with their mode labels."""
    modes = cyclic_modes(n, cores.order)
    return [cores.core(mode) for mode in modes], modes
