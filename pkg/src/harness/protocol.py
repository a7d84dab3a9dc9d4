"""
Two-stage experiment protocol.

The preparation stage runs TR-ALS to convergence and records its iteration
count T. The experimental stage then runs every solver with 2T as the only
stopping rule, over a grid of embedding sizes and several seeded trials.
"""

import time
from pathlib import Path
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

from src.sketch import derive_seed
from src.solvers import SOLVERS, FitConfig, get_solver, tr_als
from src.tensor import DenseTensor, SparseTensor
from src.tensor.io import load_tensor
from src.utils import get_logger

from .noise import add_noise
from .records import ExperimentRecord, noise_path, records_frame, write_records
from .sweep_config import SweepSpec
from .synthetic import gen_synthetic

logger = get_logger(__name__)

Tensor = Union[DenseTensor, SparseTensor]
REFERENCE = "tr-als"
SOLVER_KEYS = {name: position for position, name in enumerate(SOLVERS)}


def preparation_stage(
    tensor: Tensor,
    ranks: Sequence[int],
    max_iterations: int = 500,
    tolerance: float = 1e-6,
    seed: int = 0,
) -> int:
    """Iterations T used by a TR-ALS run with cap `max_iterations` and tolerance `tolerance`."""
    config = FitConfig.build(
        ranks=tuple(ranks), max_iterations=max_iterations, tolerance=tolerance, seed=seed
    )
    result = tr_als(tensor, config)
    logger.info(
        "Preparation stage finished", iterations=result.iterations, rel_error=result.final_error
    )
    return result.iterations


def run_point(
    tensor: Tensor,
    ranks: Sequence[int],
    solver: str,
    m: int,
    trial: int,
    base_seed: int,
    cap: int,
    timing: bool = True,
) -> ExperimentRecord:
    """One capped fit; the clock covers the solver call only."""
    seed = derive_seed(base_seed, SOLVER_KEYS[solver], m, trial)
    config = FitConfig.build(
        ranks=tuple(ranks),
        max_iterations=cap,
        tolerance=0.0,
        embedding_size=m if solver != REFERENCE else None,
        seed=seed,
        track_error="final",
    )
    solve = get_solver(solver)
    started = time.perf_counter()
    result = solve(tensor, config)
    seconds = time.perf_counter() - started if timing else 0.0
    record = ExperimentRecord(
        solver=solver,
        m=m,
        trial=trial,
        seed=seed,
        rel_error=float(result.final_error),
        iters=result.iterations,
        seconds=float(seconds),
    )
    logger.debug("Recorded run", **record.__dict__)
    return record


def _reference_records(tensor: Tensor, ranks, sweep: SweepSpec, cap: int) -> List[ExperimentRecord]:
    return [
        run_point(tensor, ranks, REFERENCE, 0, trial, sweep.seed, cap, sweep.timing)
        for trial in range(sweep.trials)
    ]


def experimental_stage(
    tensor: Tensor,
    ranks: Sequence[int],
    sweep: SweepSpec,
    iterations: int,
) -> List[ExperimentRecord]:
    """
    Records of every solver at every embedding size and trial, capped at 2T.

    TR-ALS has no embedding size and runs once per trial with m = 0.
    """
    cap = 2 * iterations
    logger.info("Experimental stage started", cap=cap, solvers=list(sweep.solvers))
    records: List[ExperimentRecord] = []
    if REFERENCE in sweep.solvers:
        records.extend(_reference_records(tensor, ranks, sweep, cap))
    for solver in sweep.solvers:
        if solver == REFERENCE:
            continue
        for m in sweep.embedding_sizes():
            for trial in range(sweep.trials):
                records.append(
                    run_point(tensor, ranks, solver, m, trial, sweep.seed, cap, sweep.timing)
                )
    return records


def threshold_stage(
    tensor: Tensor,
    ranks: Sequence[int],
    sweep: SweepSpec,
    iterations: int,
) -> List[ExperimentRecord]:
    """
    Grow m from J_INIT by J_INC until a solver's median error is within
    THRESHOLD times the median TR-ALS error, or J_FIN is passed.
    """
    cap = 2 * iterations
    records = _reference_records(tensor, ranks, sweep, cap)
    reference = float(np.median([r.rel_error for r in records]))
    logger.info("Threshold stage started", cap=cap, reference_error=reference)
    for solver in sweep.solvers:
        if solver == REFERENCE:
            continue
        for m in sweep.embedding_sizes():
            point = [
                run_point(tensor, ranks, solver, m, trial, sweep.seed, cap, sweep.timing)
                for trial in range(sweep.trials)
            ]
            records.extend(point)
            median = float(np.median([r.rel_error for r in point]))
            if median <= sweep.threshold * reference:
                logger.info("Threshold reached", solver=solver, m=m, median_error=median)
                break
        else:
            logger.warning("Threshold not reached", solver=solver, j_fin=sweep.j_fin)
    return records


def sweep_data(sweep: SweepSpec) -> Tuple[Tensor, Optional[object]]:
    """The clean tensor of a sweep: loaded from INPUT or generated."""
    if sweep.input is not None:
        return load_tensor(sweep.input), None
    truth, tensor = gen_synthetic(sweep.synth)
    return tensor, truth


def run_sweep(sweep: SweepSpec, out: Union[str, Path]) -> List[Path]:
    """
    Full protocol for every noise level; writes one record CSV (plus its
    summary) per level.
    """
    clean, _ = sweep_data(sweep)
    ranks = (sweep.target_rank,) * len(clean.shape)
    several = len(sweep.noise) > 1
    written: List[Path] = []
    for level_index, level in enumerate(sweep.noise):
        tensor = add_noise(clean, level, derive_seed(sweep.seed, len(SOLVERS), level_index))
        logger.info("Sweep noise level", noise=level, noise_error=_noise_error(clean, tensor))
        iterations = preparation_stage(
            tensor, ranks, sweep.max_iterations, sweep.tolerance, sweep.seed
        )
        stage = threshold_stage if sweep.mode == "threshold" else experimental_stage
        frame = records_frame(stage(tensor, ranks, sweep, iterations))
        written.extend(write_records(frame, noise_path(out, level, several)))
    return written


def _noise_error(clean: Tensor, noisy: Tensor) -> float:
    if clean is noisy:
        return 0.0
    norm = clean.norm()
    if norm == 0.0:
        return 0.0
    difference = noisy.to_dense().data - clean.to_dense().data
    return float(np.linalg.norm(difference.ravel()) / norm)
