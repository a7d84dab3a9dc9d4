"""
Experiment records and their CSV files.

The raw table has one row per (solver, m, trial) run, in the column order
`solver,m,trial,seed,rel_error,iters,seconds`. TR-ALS rows carry m = 0.
"""

from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Iterable, List, Union

import pandas as pd
import pandera as pa

from src.utils import get_logger

logger = get_logger(__name__)

RECORD_COLUMNS = ["solver", "m", "trial", "seed", "rel_error", "iters", "seconds"]

RECORD_SCHEMA = pa.DataFrameSchema(
    {
        "solver": pa.Column(str),
        "m": pa.Column(int, pa.Check.ge(0)),
        "trial": pa.Column(int, pa.Check.ge(0)),
        "seed": pa.Column(int, pa.Check.ge(0)),
        "rel_error": pa.Column(float, pa.Check.ge(0.0)),
        "iters": pa.Column(int, pa.Check.ge(0)),
        "seconds": pa.Column(float, pa.Check.ge(0.0)),
    },
    strict=True,
    ordered=True,
)


@dataclass(frozen=True)
class ExperimentRecord:
    solver: str
    m: int
    trial: int
    seed: int
    rel_error: float
    iters: int
    seconds: float


def records_frame(records: Iterable[ExperimentRecord]) -> pd.DataFrame:
    """Validated record table, sorted by (solver, m, trial)."""
    frame = pd.DataFrame([asdict(r) for r in records], columns=RECORD_COLUMNS)
    frame = frame.astype(
        {
            "solver": str,
            "m": "int64",
            "trial": "int64",
            "seed": "int64",
            "rel_error": "float64",
            "iters": "int64",
            "seconds": "float64",
        }
    )
    frame = frame.sort_values(["solver", "m", "trial"], kind="mergesort").reset_index(drop=True)
    return RECORD_SCHEMA.validate(frame)


def summarize(frame: pd.DataFrame) -> pd.DataFrame:
    """Trial averages per (solver, m)."""
    if frame.empty:
        return pd.DataFrame(
            columns=["solver", "m", "trials", "mean_error", "median_error", "mean_iters", "mean_seconds"]
        )
    summary = frame.groupby(["solver", "m"], sort=True).agg(
        trials=("trial", "count"),
        mean_error=("rel_error", "mean"),
        median_error=("rel_error", "median"),
        mean_iters=("iters", "mean"),
        mean_seconds=("seconds", "mean"),
    )
    return summary.reset_index()


def noise_path(path: Union[str, Path], noise: float, several: bool) -> Path:
    """`path` itself, or `<stem>_noise<δ><suffix>` when several noise levels are swept."""
    path = Path(path)
    if not several:
        return path
    return path.with_name(f"{path.stem}_noise{noise:g}{path.suffix}")


def summary_path(path: Union[str, Path]) -> Path:
    path = Path(path)
    return path.with_name(f"{path.stem}_summary{path.suffix}")


def plot_path(path: Union[str, Path]) -> Path:
    path = Path(path)
    return path.with_name(f"{path.stem}_plot{path.suffix}")


def plot_data(frame: pd.DataFrame) -> pd.DataFrame:
    """
    Median error per embedding size, one column per solver.

    Solvers without an embedding size (m = 0) are flat reference lines and
    repeat their median on every row.
    """
    summary = summarize(frame)
    if summary.empty:
        return pd.DataFrame(columns=["m"])
    reference = summary[summary["m"] == 0]
    grid = summary[summary["m"] > 0]
    if grid.empty:
        table = reference.pivot(index="m", columns="solver", values="median_error")
    else:
        table = grid.pivot(index="m", columns="solver", values="median_error")
        for row in reference.itertuples():
            table[row.solver] = row.median_error
    table = table.reindex(sorted(table.columns), axis=1).reset_index()
    table.columns.name = None
    return table


def write_records(frame: pd.DataFrame, path: Union[str, Path]) -> List[Path]:
    """Write the raw table, its summary and its plot data next to it."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    frame.to_csv(path, index=False, lineterminator="\n")
    summary = summary_path(path)
    summarize(frame).to_csv(summary, index=False, lineterminator="\n")
    plot = plot_path(path)
    plot_data(frame).to_csv(plot, index=False, lineterminator="\n")
    logger.info(
        "Saved experiment records",
        rows=len(frame),
        path=str(path),
        summary=str(summary),
        plot=str(plot),
    )
    return [path, summary, plot]
