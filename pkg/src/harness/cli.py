"""
Command line interface: gen, fit, sweep, verify and info.

Invalid input (bad flags, unreadable files, inconsistent parameters) exits
with status 2 and a message.
"""

import functools
from pathlib import Path
from typing import Optional

import click
import pandas as pd

from config.settings import get_settings
from src.errors import TensorRingError
from src.ring.io import is_cores_archive, load_cores, save_cores
from src.sketch import derive_seed, leverage_summary
from src.solvers import SOLVERS, FitConfig, best_of_restarts, get_solver
from src.tensor import SparseTensor
from src.tensor.io import load_tensor, save_tensor
from src.utils import get_logger, setup_logging

from .noise import add_noise
from .protocol import run_sweep
from .sweep_config import build_sweep, load_sweep_config
from .synthetic import SynthSpec, gen_synthetic
from .verify import run_suites

logger = get_logger(__name__)


def usage_errors(command):
    """Report library input errors as click usage errors (exit status 2)."""

    @functools.wraps(command)
    def wrapper(*args, **kwargs):
        try:
            return command(*args, **kwargs)
        except (TensorRingError, OSError) as exc:
            raise click.UsageError(str(exc)) from exc

    return wrapper


@click.group()
@click.option(
    "--log-level",
    default=None,
    type=click.Choice(["DEBUG", "INFO", "WARNING", "ERROR"]),
    help="Logging level (overrides LOG_LEVEL)",
)
@click.option(
    "--log-renderer",
    default=None,
    type=click.Choice(["console", "json"]),
    help="Log format (overrides LOG_RENDERER)",
)
def cli(log_level: Optional[str], log_renderer: Optional[str]) -> None:
    """Randomized tensor ring decomposition."""
    settings = get_settings()
    setup_logging(log_level or settings.log_level, log_renderer or settings.log_renderer)


@cli.command()
@click.option("--exp", "experiment", default=1, type=click.IntRange(1, 4), help="Experiment recipe")
@click.option("--I", "size", default=60, type=click.IntRange(min=1), help="Mode size")
@click.option("--N", "order", default=3, type=click.IntRange(min=2), help="Tensor order")
@click.option("--R", "true_rank", default=5, type=click.IntRange(min=1), help="True ring rank")
@click.option("--density", default=0.05, type=float, help="Core density (experiment 2)")
@click.option("--spread", default=15, type=int, help="Spike rows per column (experiment 3)")
@click.option("--magnitude", default=None, type=float, help="Spike value (experiment 3)")
@click.option("--noise", default=0.0, type=float, help="Relative noise level")
@click.option("--seed", default=0, type=click.IntRange(min=0), help="Random seed")
@click.option("--out", required=True, type=click.Path(path_type=Path), help="Tensor file")
@click.option(
    "--cores-out",
    default=None,
    type=click.Path(path_type=Path),
    help="Ground-truth cores archive (default: <out>.trcr)",
)
@usage_errors
def gen(
    experiment: int,
    size: int,
    order: int,
    true_rank: int,
    density: float,
    spread: int,
    magnitude: Optional[float],
    noise: float,
    seed: int,
    out: Path,
    cores_out: Optional[Path],
) -> None:
    """Write a synthetic tensor and its ground-truth cores."""
    try:
        spec = SynthSpec(
            experiment=experiment,
            size=size,
            order=order,
            true_rank=true_rank,
            density=density,
            spread=spread,
            magnitude=magnitude,
            seed=seed,
        )
    except ValueError as exc:
        raise click.UsageError(str(exc)) from exc

    truth, tensor = gen_synthetic(spec)
    tensor = add_noise(tensor, noise, derive_seed(seed, 1))
    out.parent.mkdir(parents=True, exist_ok=True)
    save_tensor(tensor, out)
    cores_path = save_cores(truth, cores_out or out.with_suffix(".trcr"))
    click.echo(f"tensor={out} cores={cores_path} shape={tuple(tensor.shape)} norm={tensor.norm():.6g}")


@cli.command()
@click.option("--input", "input_path", required=True, type=click.Path(path_type=Path, exists=True))
@click.option("--solver", default="tr-als", type=click.Choice(sorted(SOLVERS)), help="Solver name")
@click.option("--rank", required=True, type=click.IntRange(min=1), help="Ring rank for every core")
@click.option("--m", "embedding_size", default=None, type=click.IntRange(min=1), help="Embedding size")
@click.option("--seed", default=None, type=click.IntRange(min=0), help="Random seed")
@click.option("--max-iter", default=None, type=click.IntRange(min=1), help="Iteration cap")
@click.option("--tol", default=None, type=float, help="Relative-error tolerance")
@click.option("--restarts", default=1, type=click.IntRange(min=1), help="Seeded restarts, best kept")
@click.option("--sampling", default="random", type=click.Choice(["random", "exhaustive"]))
@click.option("--out", default=None, type=click.Path(path_type=Path), help="Cores archive")
@usage_errors
def fit(
    input_path: Path,
    solver: str,
    rank: int,
    embedding_size: Optional[int],
    seed: Optional[int],
    max_iter: Optional[int],
    tol: Optional[float],
    restarts: int,
    sampling: str,
    out: Optional[Path],
) -> None:
    """Fit tensor ring cores to a tensor file."""
    settings = get_settings()
    tensor = load_tensor(input_path)
    config = FitConfig.build(
        ranks=(rank,) * len(tensor.shape),
        max_iterations=max_iter or settings.solver.max_iterations,
        tolerance=settings.solver.tolerance if tol is None else tol,
        embedding_size=embedding_size,
        seed=settings.solver.seed if seed is None else seed,
        sampling=sampling,
    )
    if solver != "tr-als" and sampling == "random" and embedding_size is None:
        raise click.UsageError(f"--m is required for {solver}")

    result = best_of_restarts(get_solver(solver), tensor, config, restarts)
    click.echo(
        f"solver={result.solver} rel_error={result.final_error:.6e} "
        f"iterations={result.iterations} seconds={result.seconds:.3f} "
        f"seed={result.seed} restarts={restarts}"
    )
    if "max_imag" in result.extras:
        click.echo(f"max_imag={result.extras['max_imag']:.3e}")
    if out is not None:
        save_cores(result.cores, out)


@cli.command()
@click.option("--config", "config_path", required=True, type=click.Path(path_type=Path, exists=True))
@click.option("--out", default=None, type=click.Path(path_type=Path), help="Record CSV")
@click.option("--mode", default=None, type=click.Choice(["grid", "threshold"]), help="Override MODE")
@click.option("--seed", default=None, type=click.IntRange(min=0), help="Override SEED")
@click.option("--noise", default=None, type=float, help="Override NOISE with one level")
@usage_errors
def sweep(
    config_path: Path,
    out: Optional[Path],
    mode: Optional[str],
    seed: Optional[int],
    noise: Optional[float],
) -> None:
    """Run the two-stage embedding-size sweep of a config file."""
    settings = get_settings()
    spec = load_sweep_config(config_path)
    overrides = {}
    if mode is not None:
        overrides["mode"] = mode
    if seed is not None:
        overrides["seed"] = seed
    if noise is not None:
        overrides["noise"] = (noise,)
    if overrides:
        spec = build_sweep({**spec.model_dump(), **overrides})

    if out is None:
        settings.ensure_data_paths_exist()
        out = settings.data_path / f"{config_path.stem}.csv"
    for path in run_sweep(spec, out):
        click.echo(str(path))


@cli.command()
@click.option("--seed", default=0, type=click.IntRange(min=0), help="Random seed")
@click.option("--instances", default=None, type=click.IntRange(min=1), help="Instances per suite")
@click.pass_context
def verify(ctx: click.Context, seed: int, instances: Optional[int]) -> None:
    """Check the structured products against dense oracles."""
    results = run_suites(seed, instances)
    table = pd.DataFrame(
        [
            {
                "suite": r.name,
                "instances": r.instances,
                "max_deviation": f"{r.max_deviation:.3e}",
                "status": "ok" if r.passed else "FAILED",
            }
            for r in results
        ]
    )
    click.echo(table.to_string(index=False))
    if not all(r.passed for r in results):
        ctx.exit(1)


@cli.command()
@click.argument("path", type=click.Path(path_type=Path, exists=True, dir_okay=False))
@usage_errors
def info(path: Path) -> None:
    """Describe a tensor file or a cores archive."""
    if is_cores_archive(path):
        cores = load_cores(path)
        click.echo(f"cores archive: order={cores.order} dims={cores.dims} ranks={cores.ranks}")
        click.echo(f"complex={cores.is_complex}")
        click.echo(pd.DataFrame(leverage_summary(cores)).to_string(index=False))
        return

    tensor = load_tensor(path)
    kind = "sparse" if isinstance(tensor, SparseTensor) else "dense"
    click.echo(f"{kind} tensor: order={len(tensor.shape)} shape={tuple(tensor.shape)}")
    click.echo(f"complex={tensor.is_complex} norm={tensor.norm():.6g}")
    if isinstance(tensor, SparseTensor):
        total = 1
        for size in tensor.shape:
            total *= size
        click.echo(f"nnz={tensor.nnz} density={tensor.nnz / total:.3e}")
