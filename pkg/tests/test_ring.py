"""Tests for tensor ring cores, subchains and the cores archive."""

import itertools

import numpy as np
import pytest
from numpy.testing import assert_allclose

from src.errors import DimensionError, DomainError, FormatError
from src.ring import (
    TRCores,
    core_unfoldings,
    fold_core,
    identity_slices,
    relative_error,
    slices_hadamard,
    subchain_product,
    subchain_tensor,
    subchain_unfolding,
    tr_reconstruct,
)
from src.ring.io import is_cores_archive, load_cores, save_cores
from src.tensor import DenseTensor, SparseTensor, cyclic_modes, unfold


@pytest.fixture
def rng():
    return np.random.default_rng(11)


@pytest.fixture
def cores(rng):
    return TRCores.random((3, 3, 3), (2, 2, 2), rng)


def trace_oracle(cores: TRCores) -> np.ndarray:
    """Entry-wise trace of slice products."""
    out = np.zeros(cores.dims, dtype=np.result_type(*cores.cores))
    for idx in itertools.product(*(range(d) for d in cores.dims)):
        product = np.eye(cores.ranks[0])
        for n, i in enumerate(idx):
            product = product @ cores.cores[n][:, i, :]
        out[idx] = np.trace(product)
    return out


def slice_product_design(cores, n):
    """Design matrix of core n formed row by row from lateral slices."""
    order = cores.order
    modes = [(n + k - 1) % order + 1 for k in range(1, order)]
    dims = [cores.dims[j - 1] for j in modes]
    rank, next_rank = cores.ranks[n - 1], cores.ranks[n % order]
    design = np.zeros((int(np.prod(dims)), rank * next_rank), dtype=np.result_type(*cores.cores))
    for joint in itertools.product(*(range(d) for d in dims)):
        row = sum(i * int(np.prod(dims[:k])) for k, i in enumerate(joint))
        product = np.eye(next_rank)
        for j, i in zip(modes, joint):
            product = product @ cores.core(j)[:, i, :]
        for r_n, r_next in itertools.product(range(rank), range(next_rank)):
            design[row, r_n + rank * r_next] = product[r_next, r_n]
    return design


class TestTRCores:
    """Tests for TRCores validation and helpers."""

    def test_ring_closure_enforced(self, rng):
        """Should reject cores whose ranks do not chain."""
        with pytest.raises(DimensionError):
            TRCores((rng.standard_normal((2, 3, 3)), rng.standard_normal((3, 3, 4))))

    def test_order_three_required(self):
        """Should reject cores that are not order 3."""
        with pytest.raises(DimensionError):
            TRCores((np.ones((2, 2)),))

    def test_shape_accessors(self, rng):
        """Should report dims and ranks."""
        cores = TRCores.random((4, 5, 6), (2, 3, 1), rng)
        assert cores.dims == (4, 5, 6)
        assert cores.ranks == (2, 3, 1)
        assert cores.core(2).shape == (3, 5, 1)

    def test_replace_keeps_others(self, cores):
        """Should swap one core only."""
        replaced = cores.replace(2, np.zeros((2, 3, 2)))
        assert not replaced.core(2).any()
        assert_allclose(replaced.core(1), cores.core(1))

    def test_mode_out_of_range(self, cores):
        """Should reject core index 0."""
        with pytest.raises(DomainError):
            cores.core(0)

    def test_complex_helpers(self, rng):
        """Should report and drop imaginary parts."""
        cores = TRCores.random((2, 2), (1, 1), rng, complex_=True)
        assert cores.is_complex
        assert cores.max_imag() > 0
        assert not cores.real().is_complex


class TestReconstruction:
    """Tests for tr_reconstruct."""

    def test_single_core(self, rng):
        """Should return the entries of a 1xIx1 core."""
        core = rng.standard_normal((1, 5, 1))
        assert_allclose(tr_reconstruct(TRCores((core,))).data, core.ravel())

    def test_rank_one(self, rng):
        """Should multiply vectors for unit ranks."""
        vectors = [rng.standard_normal(d) for d in (2, 3, 4)]
        cores = TRCores(tuple(v.reshape(1, -1, 1) for v in vectors))
        expected = np.einsum("i,j,k->ijk", *vectors)
        assert_allclose(tr_reconstruct(cores).data, expected)

    def test_trace_oracle(self, cores):
        """Should match the trace of slice products entry by entry."""
        assert_allclose(tr_reconstruct(cores).data, trace_oracle(cores))

    def test_complex_trace_oracle(self, rng):
        """Should handle complex cores."""
        cores = TRCores.random((2, 3, 2), (2, 1, 3), rng, complex_=True)
        assert_allclose(tr_reconstruct(cores).data, trace_oracle(cores))

    def test_rotation_rotates_modes(self, cores):
        """Should permute the modes cyclically when the ring is rotated."""
        rotated = tr_reconstruct(cores.rotate(1)).data
        assert_allclose(rotated, np.transpose(tr_reconstruct(cores).data, (1, 2, 0)))


class TestSliceProducts:
    """Tests for the subchain and slices-Hadamard products."""

    def test_single_slices(self, rng):
        """Should reduce to a matrix product for J1 = J2 = 1."""
        a = rng.standard_normal((2, 1, 3))
        b = rng.standard_normal((3, 1, 4))
        assert_allclose(subchain_product(a, b)[:, 0, :], a[:, 0, :] @ b[:, 0, :])

    def test_slice_indexing(self, rng):
        """Should place A(j1) B(j2) at j1 + J1*j2."""
        a = rng.standard_normal((2, 3, 2))
        b = rng.standard_normal((2, 4, 2))
        product = subchain_product(a, b)
        assert product.shape == (2, 12, 2)
        for j1, j2 in itertools.product(range(3), range(4)):
            assert_allclose(product[:, j1 + 3 * j2, :], a[:, j1, :] @ b[:, j2, :])

    def test_identity_slices_replicate(self, rng):
        """Should replicate B's slices when A has identity slices."""
        b = rng.standard_normal((2, 3, 2))
        product = subchain_product(identity_slices(2, 2), b)
        for j2 in range(3):
            assert_allclose(product[:, 2 * j2, :], b[:, j2, :])
            assert_allclose(product[:, 2 * j2 + 1, :], b[:, j2, :])

    def test_inner_mismatch(self, rng):
        """Should reject mismatched inner ranks."""
        with pytest.raises(DimensionError):
            subchain_product(np.ones((2, 2, 3)), np.ones((2, 2, 2)))

    def test_slices_hadamard(self, rng):
        """Should multiply matching slices."""
        a = rng.standard_normal((2, 4, 3))
        b = rng.standard_normal((3, 4, 2))
        product = slices_hadamard(a, b)
        for j in range(4):
            assert_allclose(product[:, j, :], a[:, j, :] @ b[:, j, :])
        assert_allclose(slices_hadamard(identity_slices(3, 4), b), b)

    def test_slices_hadamard_extent_mismatch(self):
        """Should reject different mode-2 extents."""
        with pytest.raises(DimensionError):
            slices_hadamard(np.ones((2, 3, 2)), np.ones((2, 4, 2)))


class TestSubchain:
    """Tests for subchain tensors and the design matrix."""

    def test_two_cores(self, rng):
        """Should be the other core itself for N = 2."""
        cores = TRCores.random((3, 4), (2, 3), rng)
        assert_allclose(subchain_tensor(cores, 1), cores.core(2))

    def test_identity_cores(self):
        """Should give identity slices for identity-slice cores."""
        cores = TRCores((identity_slices(2, 2), identity_slices(2, 3), identity_slices(2, 2)))
        sub = subchain_tensor(cores, 2)
        assert sub.shape == (2, 4, 2)
        for j in range(4):
            assert_allclose(sub[:, j, :], np.eye(2))

    @pytest.mark.parametrize(
        "dims,ranks",
        [((2, 3, 4), (2, 3, 1)), ((3, 2, 2, 3), (2, 1, 3, 2))],
    )
    @pytest.mark.parametrize("complex_", [False, True])
    def test_matches_slice_products(self, rng, dims, ranks, complex_):
        """Should hold the lateral-slice product G_{n+1}(i_{n+1}) ... G_{n-1}(i_{n-1}) in every row."""
        cores = TRCores.random(dims, ranks, rng, complex_=complex_)
        for n in range(1, len(dims) + 1):
            design = subchain_unfolding(subchain_tensor(cores, n))
            assert_allclose(design, slice_product_design(cores, n), rtol=1e-12, atol=1e-12)

    def test_needs_two_cores(self, rng):
        """Should reject a single-core ring."""
        with pytest.raises(DomainError):
            subchain_tensor(TRCores((rng.standard_normal((1, 3, 1)),)), 1)

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_design_reproduces_unfolding(self, cores, n):
        """Should satisfy X_[n]^T = G_[2] G_n(2)^T."""
        design = subchain_unfolding(subchain_tensor(cores, n))
        unknown = core_unfoldings(cores.core(n)).classical
        assert_allclose(design @ unknown.T, unfold(tr_reconstruct(cores).data, n).T)


class TestCoreUnfoldings:
    """Tests for core_unfoldings and fold_core."""

    def test_column_vector(self, rng):
        """Should give an Ix1 column for a 1xIx1 core."""
        core = rng.standard_normal((1, 4, 1))
        assert core_unfoldings(core).classical.shape == (4, 1)

    def test_element_law(self, rng):
        """Should place G(r1, i, r2) at (i, r1 + R*r2)."""
        core = rng.standard_normal((2, 3, 4))
        classical = core_unfoldings(core).classical
        for r1, i, r2 in itertools.product(range(2), range(3), range(4)):
            assert classical[i, r1 + 2 * r2] == core[r1, i, r2]

    def test_fold_round_trip(self, rng):
        """Should rebuild the core."""
        core = rng.standard_normal((2, 3, 4))
        assert_allclose(fold_core(core_unfoldings(core).classical, 2, 4), core)


class TestRelativeError:
    """Tests for relative_error."""

    def test_exact(self, cores):
        """Should vanish on the represented tensor."""
        assert relative_error(cores, tr_reconstruct(cores)) < 1e-12

    def test_zero_cores(self, cores):
        """Should be 1 for zero cores."""
        zero = TRCores(tuple(np.zeros_like(c) for c in cores.cores))
        assert relative_error(zero, tr_reconstruct(cores)) == pytest.approx(1.0)

    def test_perturbation(self, cores, rng):
        """Should equal the relative size of a perturbation."""
        target = tr_reconstruct(cores).data
        delta = 1e-3 * rng.standard_normal(target.shape)
        error = relative_error(cores, DenseTensor(target + delta))
        expected = np.linalg.norm(delta) / np.linalg.norm(target + delta)
        assert error == pytest.approx(expected)

    def test_sparse_target(self, cores):
        """Should accept sparse tensors."""
        sparse = SparseTensor.from_dense(tr_reconstruct(cores))
        assert relative_error(cores, sparse) < 1e-12

    def test_zero_tensor(self, cores):
        """Should reject a zero target."""
        with pytest.raises(DomainError):
            relative_error(cores, DenseTensor(np.zeros(cores.dims)))


class TestCoresArchive:
    """Tests for the cores archive."""

    def test_round_trip(self, tmp_path, rng):
        """Should restore cores and be recognised by its magic."""
        cores = TRCores.random((2, 3, 4), (2, 1, 3), rng, complex_=True)
        path = save_cores(cores, tmp_path / "c.trcr")
        assert is_cores_archive(path)
        loaded = load_cores(path)
        for a, b in zip(loaded.cores, cores.cores):
            assert_allclose(a, b)

    def test_not_an_archive(self, tmp_path):
        """Should reject other files."""
        path = tmp_path / "x.bin"
        path.write_bytes(b"DTEN" + b"\x00" * 8)
        assert not is_cores_archive(path)
        with pytest.raises(FormatError):
            load_cores(path)
