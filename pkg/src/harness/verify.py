"""
Property suites: the structured products checked against dense brute force.

Each suite draws small random instances and reports the largest relative
deviation between the fast computation and its explicit-matrix oracle.
"""

import itertools
from dataclasses import dataclass
from functools import reduce
from typing import Callable, List, Tuple

import numpy as np

from src.ring import (
    TRCores,
    core_unfoldings,
    slices_hadamard,
    subchain_product,
    subchain_tensor,
    subchain_unfolding,
    tr_reconstruct,
)
from src.sketch import (
    TensorSketch,
    derive_seed,
    draw_joint_samples,
    draw_mixers,
    make_rng,
    mix_core,
    sampled_subchain,
    tensorsketch_subchain,
)
from src.tensor import cyclic_modes, khatri_rao, kronecker, mode_n_product, unfold
from src.utils import get_logger

logger = get_logger(__name__)

TOLERANCE = 1e-10


@dataclass(frozen=True)
class SuiteResult:
    name: str
    instances: int
    max_deviation: float

    @property
    def passed(self) -> bool:
        return self.max_deviation <= TOLERANCE


def deviation(actual: np.ndarray, expected: np.ndarray) -> float:
    scale = max(float(np.linalg.norm(expected)), 1.0)
    return float(np.linalg.norm(np.asarray(actual) - np.asarray(expected)) / scale)


def _random(rng: np.random.Generator, shape, complex_: bool) -> np.ndarray:
    values = rng.standard_normal(shape)
    if complex_:
        values = values + 1j * rng.standard_normal(shape)
    return values


def _mode2(tensor: np.ndarray, matrix: np.ndarray) -> np.ndarray:
    return mode_n_product(tensor, matrix, 2)


def subchain_kronecker_case(rng: np.random.Generator) -> float:
    """(A ×₂ U) ⊠₂ (B ×₂ V) = (A ⊠₂ B) ×₂ (V ⊗ U)."""
    complex_ = bool(rng.integers(0, 2))
    i1, j1, k, j2, i2 = rng.integers(1, 5, size=5)
    r1, r2 = rng.integers(1, 5, size=2)
    a = _random(rng, (i1, j1, k), complex_)
    b = _random(rng, (k, j2, i2), complex_)
    u = _random(rng, (r1, j1), complex_)
    v = _random(rng, (r2, j2), complex_)
    fast = subchain_product(_mode2(a, u), _mode2(b, v))
    return deviation(fast, _mode2(subchain_product(a, b), kronecker(v, u)))


def slices_hadamard_case(rng: np.random.Generator) -> float:
    """(A ×₂ U) ⊛₂ (B ×₂ V) = (A ⊠₂ B) ×₂ (Vᵀ ⊙ Uᵀ)ᵀ."""
    complex_ = bool(rng.integers(0, 2))
    i1, j1, k, j2, i2 = rng.integers(1, 5, size=5)
    m = int(rng.integers(1, 8))
    a = _random(rng, (i1, j1, k), complex_)
    b = _random(rng, (k, j2, i2), complex_)
    u = _random(rng, (m, j1), complex_)
    v = _random(rng, (m, j2), complex_)
    fast = slices_hadamard(_mode2(a, u), _mode2(b, v))
    return deviation(fast, _mode2(subchain_product(a, b), khatri_rao(v.T, u.T).T))


def _combined_matrix(sketch: TensorSketch, modes) -> np.ndarray:
    bucket, sign = sketch.combined(modes)
    matrix = np.zeros((sketch.m, bucket.shape[0]))
    matrix[bucket, np.arange(bucket.shape[0])] = sign
    return matrix


def tensorsketch_case(rng: np.random.Generator) -> float:
    """FFT-domain TensorSketch of a core chain equals the explicit ΩD product."""
    complex_ = bool(rng.integers(0, 2))
    order = int(rng.integers(2, 5))
    dims = tuple(int(d) for d in rng.integers(1, 5, size=order))
    ranks = tuple(int(r) for r in rng.integers(1, 4, size=order))
    m = int(rng.integers(2, 8))
    cores = TRCores.random(dims, ranks, rng, complex_=complex_)
    sketch = TensorSketch.draw(dims, m, rng)
    modes = tuple(range(1, order + 1))
    chain = reduce(subchain_product, cores.cores)
    fast = tensorsketch_subchain(list(cores.cores), sketch, modes)
    return deviation(fast, _mode2(chain, _combined_matrix(sketch, modes)))


def combined_hash_case(rng: np.random.Generator) -> float:
    """Combined buckets are mode sums mod m and combined signs are mode products."""
    order = int(rng.integers(2, 5))
    dims = tuple(int(d) for d in rng.integers(1, 5, size=order))
    m = int(rng.integers(1, 8))
    sketch = TensorSketch.draw(dims, m, rng)
    modes = tuple(int(j) for j in rng.permutation(np.arange(1, order + 1)))
    bucket, sign = sketch.combined(modes)
    other = [dims[j - 1] for j in modes]
    joint = np.stack(np.unravel_index(np.arange(int(np.prod(other))), other, order="F"), axis=1)
    expected_bucket = sum(sketch.buckets[j - 1][joint[:, k]] for k, j in enumerate(modes)) % m
    expected_sign = np.prod([sketch.signs[j - 1][joint[:, k]] for k, j in enumerate(modes)], axis=0)
    return deviation(bucket, expected_bucket) + deviation(sign, expected_sign)


def unfolding_law_case(rng: np.random.Generator) -> float:
    """Unfoldings of X ×₁ U₁ ... ×_N U_N factor through Kronecker products."""
    order = int(rng.integers(2, 5))
    dims = tuple(int(d) for d in rng.integers(1, 4, size=order))
    rows = tuple(int(d) for d in rng.integers(1, 4, size=order))
    data = rng.standard_normal(dims)
    factors = [rng.standard_normal((rows[j], dims[j])) for j in range(order)]
    mixed = reduce(lambda t, j: mode_n_product(t, factors[j], j + 1), range(order), data)
    n = int(rng.integers(1, order + 1))
    cyclic = [factors[j - 1] for j in reversed(cyclic_modes(n, order))]
    classical = [factors[j] for j in reversed(range(order)) if j != n - 1]
    kron_cyclic = reduce(kronecker, cyclic) if cyclic else np.ones((1, 1))
    kron_classical = reduce(kronecker, classical) if classical else np.ones((1, 1))
    u = factors[n - 1]
    return deviation(
        unfold(mixed, n, "modeN"), u @ unfold(data, n, "modeN") @ kron_cyclic.T
    ) + deviation(unfold(mixed, n, "classical"), u @ unfold(data, n, "classical") @ kron_classical.T)


def subchain_equivalence_case(rng: np.random.Generator) -> float:
    """X_[n] = G_n(2) (G_[2]^{≠n})ᵀ for a tensor in ring format."""
    order = int(rng.integers(2, 5))
    dims = tuple(int(d) for d in rng.integers(1, 5, size=order))
    ranks = tuple(int(r) for r in rng.integers(1, 4, size=order))
    cores = TRCores.random(dims, ranks, rng, complex_=bool(rng.integers(0, 2)))
    n = int(rng.integers(1, order + 1))
    design = subchain_unfolding(subchain_tensor(cores, n))
    unknown = core_unfoldings(cores.core(n)).classical
    return deviation(unfold(tr_reconstruct(cores).data, n, "modeN"), unknown @ design.T)


def slice_product_design(cores: TRCores, n: int) -> np.ndarray:
    """
    Design matrix of core n built one entry at a time.

    Row j is the little-endian position of (i_{n+1}, ..., i_N, i_1, ..., i_{n-1})
    and holds the product of the lateral slices at those indices, with
    entry (r_{n+1}, r_n) of the product in column r_n + R_n * r_{n+1}.
    """
    order = cores.order
    modes = [(n + k - 1) % order + 1 for k in range(1, order)]
    dims = [cores.dims[j - 1] for j in modes]
    rank, next_rank = cores.ranks[n - 1], cores.ranks[n % order]
    dtype = np.result_type(*cores.cores)
    design = np.zeros((int(np.prod(dims)), rank * next_rank), dtype=dtype)
    for joint in itertools.product(*(range(d) for d in dims)):
        row = sum(i * int(np.prod(dims[:k])) for k, i in enumerate(joint))
        product = np.eye(next_rank, dtype=dtype)
        for j, i in zip(modes, joint):
            product = product @ cores.core(j)[:, i, :]
        for r_n in range(rank):
            for r_next in range(next_rank):
                design[row, r_n + rank * r_next] = product[r_next, r_n]
    return design


def subchain_slices_case(rng: np.random.Generator) -> float:
    """G_[2]^{≠n} from chained ⊠₂ products equals the slice-by-slice products."""
    order = int(rng.integers(3, 5))
    dims = tuple(int(d) for d in rng.integers(1, 4, size=order))
    ranks = tuple(int(r) for r in rng.integers(1, 4, size=order))
    cores = TRCores.random(dims, ranks, rng, complex_=bool(rng.integers(0, 2)))
    n = int(rng.integers(1, order + 1))
    fast = subchain_unfolding(subchain_tensor(cores, n))
    return deviation(fast, slice_product_design(cores, n))


def ksrft_factorization_case(rng: np.random.Generator) -> float:
    """Sampled mixed subchain equals S (⊗ F_j D_j) G_[2]^{≠n} formed explicitly."""
    order = 3
    dims = tuple(int(d) for d in rng.integers(1, 5, size=order))
    ranks = tuple(int(r) for r in rng.integers(1, 4, size=order))
    m = int(rng.integers(1, 7))
    cores = TRCores.random(dims, ranks, rng)
    mixers = draw_mixers(dims, rng)
    n = int(rng.integers(1, order + 1))
    modes = cyclic_modes(n, order)
    idxs = draw_joint_samples([dims[j - 1] for j in modes], m, rng)
    mixed = [mix_core(cores.core(j), mixers[j - 1]) for j in modes]
    fast = subchain_unfolding(sampled_subchain(idxs, mixed))

    operator = reduce(kronecker, [mixers[j - 1].matrix() for j in reversed(modes)])
    full = operator @ subchain_unfolding(subchain_tensor(cores, n))
    rows = np.ravel_multi_index(idxs.T, [dims[j - 1] for j in modes], order="F")
    return deviation(fast, full[rows])


SUITES: Tuple[Tuple[str, Callable[[np.random.Generator], float], int], ...] = (
    ("subchain-kronecker", subchain_kronecker_case, 50),
    ("slices-hadamard-khatri-rao", slices_hadamard_case, 50),
    ("tensorsketch-fft", tensorsketch_case, 50),
    ("subchain-slices", subchain_slices_case, 25),
    ("subchain-equivalence", subchain_equivalence_case, 25),
    ("ksrft-factorization", ksrft_factorization_case, 25),
    ("unfolding-laws", unfolding_law_case, 25),
    ("combined-hash", combined_hash_case, 25),
)


def run_suites(seed: int = 0, instances: int = None) -> List[SuiteResult]:
    """Run every suite; `instances` overrides the per-suite instance count."""
    results = []
    for position, (name, case, count) in enumerate(SUITES):
        count = instances or count
        worst = 0.0
        for instance in range(count):
            rng = make_rng(derive_seed(seed, position, instance))
            worst = max(worst, case(rng))
        result = SuiteResult(name, count, worst)
        log = logger.info if result.passed else logger.error
        log("Property suite finished", suite=name, instances=count, max_deviation=worst)
        results.append(result)
    return results
