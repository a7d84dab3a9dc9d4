"""Tests for the least-squares kernels and the ALS solvers."""

import numpy as np
import pytest
from numpy.testing import assert_allclose, assert_array_equal
from structlog.testing import CapturingLogger

from src.errors import ConfigurationError, DimensionError, DomainError
from src.ring import TRCores, relative_error, tr_reconstruct
from src.sketch import TensorSketch, make_rng
from src.solvers import (
    SOLVERS,
    FitConfig,
    best_of_restarts,
    get_solver,
    initial_cores,
    solve_ls,
    solve_ls_real,
    tr_als,
    tr_als_sampled,
    tr_ksrft_als,
    tr_ksrft_als_premix,
    tr_ts_als,
)
from src.solvers import base as solver_base
from src.solvers import ksrft as ksrft_module
from src.solvers import sampled as sampled_module
from src.solvers import tensorsketch as tensorsketch_module
from src.tensor import DenseTensor, SparseTensor


@pytest.fixture
def rng():
    return make_rng(17)


@pytest.fixture
def small_tensor(rng):
    return DenseTensor(rng.standard_normal((4, 4, 4)))


def low_rank_tensor(dims, ranks, seed, noise=0.0):
    rng = make_rng(seed)
    data = tr_reconstruct(TRCores.random(dims, ranks, rng)).data
    if noise:
        perturbation = rng.standard_normal(data.shape)
        data = data + noise * np.linalg.norm(data) / np.linalg.norm(perturbation) * perturbation
    return DenseTensor(data)


def injective_sketch(rng):
    """Sketch of (4, 4, 4) tensors whose combined hashes never collide."""
    return TensorSketch(
        m=64,
        buckets=tuple(np.arange(4) * 4**j for j in range(3)),
        signs=tuple(rng.choice([-1.0, 1.0], size=4) for _ in range(3)),
    )


class TestSolveLS:
    """Tests for solve_ls and solve_ls_real."""

    def test_identity(self, rng):
        """Should return B for A = I."""
        b = rng.standard_normal((4, 3))
        assert_allclose(solve_ls(np.eye(4), b), b)

    def test_planted_solution(self, rng):
        """Should recover Z from A Z for a tall full-rank A."""
        a = rng.standard_normal((20, 4))
        z = rng.standard_normal((4, 3))
        assert_allclose(solve_ls(a, a @ z), z, atol=1e-10)

    def test_complex_planted(self, rng):
        """Should solve complex systems."""
        a = rng.standard_normal((10, 3)) + 1j * rng.standard_normal((10, 3))
        z = rng.standard_normal((3, 2)) + 1j * rng.standard_normal((3, 2))
        assert_allclose(solve_ls(a, a @ z), z, atol=1e-10)

    def test_rank_deficient_min_norm(self):
        """Should return the minimum-norm solution for repeated columns."""
        a = np.array([[1.0, 1.0], [1.0, 1.0], [0.0, 0.0]])
        b = np.array([[2.0], [2.0], [0.0]])
        assert_allclose(solve_ls(a, b), [[1.0], [1.0]])

    def test_wide_system(self, rng):
        """Should match the pseudo-inverse for more unknowns than rows."""
        a = rng.standard_normal((2, 5))
        b = rng.standard_normal((2, 1))
        assert_allclose(solve_ls(a, b), np.linalg.pinv(a) @ b, atol=1e-10)

    def test_shape_errors(self):
        """Should reject mismatched and empty systems."""
        with pytest.raises(DimensionError):
            solve_ls(np.eye(3), np.ones((2, 1)))
        with pytest.raises(DomainError):
            solve_ls(np.ones((0, 2)), np.ones((0, 1)))

    def test_real_input(self, rng):
        """Should agree with solve_ls on real systems."""
        a = rng.standard_normal((8, 3))
        b = rng.standard_normal((8, 2))
        assert_allclose(solve_ls_real(a, b), solve_ls(a, b), atol=1e-12)

    def test_real_minimizer(self):
        """Should fit the real parts when A is real and B complex."""
        a = np.ones((2, 1), dtype=complex)
        b = np.array([[1 + 1j], [3 - 1j]])
        solution = solve_ls_real(a, b)
        assert np.isrealobj(solution)
        assert_allclose(solution, [[2.0]])

    def test_real_planted(self, rng):
        """Should recover a real Z from a complex A."""
        a = rng.standard_normal((10, 3)) + 1j * rng.standard_normal((10, 3))
        z = rng.standard_normal((3, 2))
        assert_allclose(solve_ls_real(a, a @ z), z, atol=1e-10)


class TestFitConfig:
    """Tests for FitConfig and the solver registry."""

    def test_invalid_values(self):
        """Should raise ConfigurationError for invalid settings."""
        with pytest.raises(ConfigurationError):
            FitConfig.build(ranks=(0, 2))
        with pytest.raises(ConfigurationError):
            FitConfig.build(ranks=(2, 2), embedding_size=0)
        with pytest.raises(ConfigurationError):
            FitConfig.build(ranks=(2, 2), sampling="sometimes")

    def test_registry(self):
        """Should list the five solvers."""
        assert set(SOLVERS) == {
            "tr-als",
            "tr-als-sampled",
            "tr-ksrft-als",
            "tr-ksrft-als-premix",
            "tr-ts-als",
        }
        assert get_solver("tr-als") is tr_als
        with pytest.raises(ConfigurationError):
            get_solver("tr-svd")

    def test_missing_embedding_size(self, small_tensor):
        """Should require m for randomized solvers in the sampling regime."""
        with pytest.raises(ConfigurationError):
            tr_ksrft_als(small_tensor, FitConfig(ranks=(2, 2, 2), max_iterations=1))

    def test_rank_count(self, small_tensor):
        """Should need one rank per mode."""
        with pytest.raises(DimensionError):
            tr_als(small_tensor, FitConfig(ranks=(2, 2), max_iterations=1))

    def test_initial_shape(self, small_tensor, rng):
        """Should reject initial cores of another shape."""
        initial = TRCores.random((4, 4, 3), (2, 2, 2), rng)
        with pytest.raises(DimensionError):
            tr_als(small_tensor, FitConfig(ranks=(2, 2, 2), max_iterations=1), initial)


class TestTRALS:
    """Tests for deterministic TR-ALS."""

    def test_rank_one(self):
        """Should fit a rank-1 tensor to near machine precision."""
        tensor = low_rank_tensor((5, 6, 7), (1, 1, 1), seed=2)
        result = tr_als(tensor, FitConfig(ranks=(1, 1, 1), max_iterations=50, tolerance=1e-12))
        assert result.final_error < 1e-8

    def test_errors_non_increasing(self, small_tensor):
        """Should never increase the error between sweeps."""
        result = tr_als(small_tensor, FitConfig(ranks=(2, 2, 2), max_iterations=15, tolerance=0.0))
        assert len(result.errors) == 15
        assert np.all(np.diff(result.errors) <= 1e-10)

    def test_stops_at_tolerance(self):
        """Should stop once the error falls below the tolerance."""
        tensor = low_rank_tensor((4, 5, 6), (1, 1, 1), seed=4)
        result = tr_als(tensor, FitConfig(ranks=(1, 1, 1), max_iterations=200, tolerance=1e-6))
        assert result.iterations < 200
        assert result.final_error < 1e-6

    def test_final_tracking(self, small_tensor):
        """Should record one error when tracking the final iterate only."""
        result = tr_als(
            small_tensor,
            FitConfig(ranks=(2, 2, 2), max_iterations=3, tolerance=0.0, track_error="final"),
        )
        assert result.iterations == 3
        assert len(result.errors) == 1
        assert result.final_error == pytest.approx(relative_error(result.cores, small_tensor))

    def test_sparse_input(self, small_tensor):
        """Should give the same fit for sparse storage."""
        config = FitConfig(ranks=(2, 2, 2), max_iterations=2, seed=5)
        dense = tr_als(small_tensor, config)
        sparse = tr_als(SparseTensor.from_dense(small_tensor), config)
        assert_allclose(sparse.final_error, dense.final_error)

    def test_same_initial_cores(self):
        """Should derive identical starting cores from one seed."""
        first = initial_cores((3, 4, 5), (2, 2, 2), 9)
        second = initial_cores((3, 4, 5), (2, 2, 2), 9)
        for a, b in zip(first.cores, second.cores):
            assert_array_equal(a, b)


class TestDegenerateRegimes:
    """Randomized solvers reproduce TR-ALS when their sketch loses nothing."""

    @pytest.fixture
    def config(self):
        return FitConfig(ranks=(2, 2, 2), max_iterations=1, seed=3, sampling="exhaustive")

    @pytest.fixture
    def reference(self, small_tensor, config):
        return tr_als(small_tensor, config)

    def assert_same_cores(self, result, reference):
        for a, b in zip(result.cores.cores, reference.cores.cores):
            assert_allclose(a, b, atol=1e-8)

    def test_sampled(self, small_tensor, config, reference):
        """Should match with every joint index sampled once at unit weight."""
        self.assert_same_cores(tr_als_sampled(small_tensor, config), reference)

    def test_ksrft(self, small_tensor, config, reference):
        """Should match when every mixed row is kept."""
        result = tr_ksrft_als(small_tensor, config)
        assert not result.cores.is_complex
        self.assert_same_cores(result, reference)

    def test_premix(self, small_tensor, config, reference):
        """Should match after unmixing, with real cores for real input."""
        result = tr_ksrft_als_premix(small_tensor, config)
        assert not result.cores.is_complex
        assert result.extras["max_imag"] < 1e-8
        self.assert_same_cores(result, reference)

    def test_premix_complex_input(self, rng, config):
        """Should match TR-ALS on complex tensors."""
        data = rng.standard_normal((4, 4, 4)) + 1j * rng.standard_normal((4, 4, 4))
        tensor = DenseTensor(data)
        self.assert_same_cores(tr_ksrft_als_premix(tensor, config), tr_als(tensor, config))

    def test_tensorsketch(self, small_tensor, config, reference, rng):
        """Should match under an injective sketch."""
        result = tr_ts_als(small_tensor, config, sketch=injective_sketch(rng))
        self.assert_same_cores(result, reference)


class TestRandomizedSolvers:
    """Tests for reproducibility and diagnostics of the randomized solvers."""

    @pytest.mark.parametrize(
        "solve", [tr_als_sampled, tr_ksrft_als, tr_ksrft_als_premix, tr_ts_als]
    )
    def test_deterministic(self, small_tensor, solve):
        """Should reproduce cores bit for bit from the same seed."""
        config = FitConfig(ranks=(2, 2, 2), max_iterations=2, embedding_size=12, seed=8)
        first = solve(small_tensor, config)
        second = solve(small_tensor, config)
        for a, b in zip(first.cores.cores, second.cores.cores):
            assert_array_equal(a, b)
        assert first.errors == second.errors

    def test_seed_changes_sketch(self, small_tensor):
        """Should draw different samples for different seeds."""
        config = FitConfig(ranks=(2, 2, 2), max_iterations=2, embedding_size=8, seed=1)
        first = tr_ksrft_als(small_tensor, config)
        second = tr_ksrft_als(small_tensor, config.model_copy(update={"seed": 2}))
        assert not np.allclose(first.cores.core(1), second.cores.core(1))

    def test_small_embedding_warning(self, small_tensor, monkeypatch):
        """Should warn when m is below R_n R_{n+1}."""
        capture = CapturingLogger()
        monkeypatch.setattr(solver_base, "logger", capture)
        tr_ts_als(small_tensor, FitConfig(ranks=(2, 2, 2), max_iterations=1, embedding_size=2))
        assert [call.method_name for call in capture.calls].count("warning") == 1

    def test_no_warning_when_exhaustive(self, small_tensor, monkeypatch):
        """Should stay quiet in the exhaustive regime."""
        capture = CapturingLogger()
        monkeypatch.setattr(solver_base, "logger", capture)
        tr_als_sampled(small_tensor, FitConfig(ranks=(2, 2, 2), max_iterations=1, sampling="exhaustive"))
        assert "warning" not in [call.method_name for call in capture.calls]

    @pytest.mark.parametrize("sampling,rows", [("random", 6), ("exhaustive", 16)])
    def test_sampling_plan_logged(self, small_tensor, monkeypatch, sampling, rows):
        """Should log the number of sampled rows per mode once per fit."""
        capture = CapturingLogger()
        monkeypatch.setattr(sampled_module, "logger", capture)
        config = FitConfig(ranks=(2, 2, 2), max_iterations=2, embedding_size=6, sampling=sampling)
        tr_als_sampled(small_tensor, config)
        plan = [call for call in capture.calls if call.args == ("Sampling plan",)]
        assert len(plan) == 1
        assert plan[0].kwargs["rows"] == {1: rows, 2: rows, 3: rows}

    def test_sketch_logged(self, small_tensor, monkeypatch):
        """Should log the drawn sketch parameters."""
        capture = CapturingLogger()
        monkeypatch.setattr(tensorsketch_module, "logger", capture)
        tr_ts_als(small_tensor, FitConfig(ranks=(2, 2, 2), max_iterations=1, embedding_size=8, seed=2))
        drawn = [call for call in capture.calls if call.args == ("Drew sketch",)]
        assert len(drawn) == 1
        assert "m=8" in drawn[0].kwargs["sketch"]

    def test_ksrft_rejects_complex(self, rng):
        """Should point complex inputs to the premix variant."""
        tensor = DenseTensor(rng.standard_normal((3, 3, 3)) + 1j)
        with pytest.raises(DomainError):
            tr_ksrft_als(tensor, FitConfig(ranks=(1, 1, 1), embedding_size=4))

    def test_premix_reports_imaginary_part(self, small_tensor, monkeypatch):
        """Should record the imaginary part left after unmixing sampled fits."""
        capture = CapturingLogger()
        monkeypatch.setattr(ksrft_module, "logger", capture)
        result = tr_ksrft_als_premix(
            small_tensor, FitConfig(ranks=(2, 2, 2), max_iterations=2, embedding_size=6, seed=4)
        )
        assert "max_imag" in result.extras
        if result.extras["max_imag"] >= ksrft_module.IMAG_TOLERANCE:
            assert result.cores.is_complex
            assert "warning" in [call.method_name for call in capture.calls]

    def test_sparse_tensorsketch_matches_dense(self, small_tensor):
        """Should sketch sparse storage to the same fit."""
        config = FitConfig(ranks=(2, 2, 2), max_iterations=2, embedding_size=16, seed=6)
        dense = tr_ts_als(small_tensor, config)
        sparse = tr_ts_als(SparseTensor.from_dense(small_tensor), config)
        for a, b in zip(dense.cores.cores, sparse.cores.cores):
            assert_allclose(a, b, atol=1e-10)

    def test_best_of_restarts(self, small_tensor):
        """Should keep the lowest error among restarts."""
        config = FitConfig(ranks=(2, 2, 2), max_iterations=2, embedding_size=10, seed=3)
        best = best_of_restarts(tr_ksrft_als, small_tensor, config, 3)
        single = tr_ksrft_als(small_tensor, config)
        assert best.final_error <= single.final_error
        with pytest.raises(ConfigurationError):
            best_of_restarts(tr_ksrft_als, small_tensor, config, 0)


@pytest.mark.slow
class TestConvergence:
    """Longer fits of planted low-rank tensors."""

    @pytest.fixture
    def noisy(self):
        return low_rank_tensor((10, 10, 10), (2, 2, 2), seed=31, noise=0.01)

    def test_tr_als_reaches_noise_level(self, noisy):
        """Should fit down to the noise level and not below it."""
        result = tr_als(noisy, FitConfig(ranks=(2, 2, 2), max_iterations=200, tolerance=0.0))
        assert 0.008 <= result.final_error <= 0.015

    @pytest.mark.parametrize(
        "solve,m",
        [(tr_als_sampled, 60), (tr_ksrft_als, 60), (tr_ksrft_als_premix, 60), (tr_ts_als, 400)],
    )
    def test_randomized_close_to_exact(self, noisy, solve, m):
        """Should come within a few times the noise level."""
        config = FitConfig(
            ranks=(2, 2, 2), max_iterations=100, tolerance=0.0, embedding_size=m, track_error="final"
        )
        assert solve(noisy, config).final_error < 0.05

    def test_best_restart_recovers_exact_ring(self):
        """Should recover an exactly tensor-ring tensor to 1e-3 with five restarts."""
        tensor = low_rank_tensor((20, 20, 20), (3, 3, 3), seed=41)
        config = FitConfig(ranks=(3, 3, 3), max_iterations=500, tolerance=1e-6, seed=5)
        best = best_of_restarts(tr_als, tensor, config, 5)
        assert best.final_error < 1e-3
        assert best.iterations <= 500
