import logging
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
import scipy.interpolate
from pydantic import BaseModel

from ..core.errors import ContractViolation
from ..metrics import aggregate
from ..models import Architecture, TaskId
from ..numerics import r_squared
from .protocol import Hyperparams, Protocol, describe_model, protocol_jobs, run_series
from .runner import execute

logger = logging.getLogger(__name__)

PAPER_N_GRID = [10, 20, 50, 100, 150, 200, 300, 400, 500, 700, 1000]
DESK_N_GRID = [10, 20, 50, 100, 150, 200]
SIGMA_GRID = [round(float(s), 10) for s in np.linspace(0.01, 0.30, 30)]
REFINEMENT = 10


class ErrorSurface(BaseModel):
    """Mean training RNMSE of the ESN over (sigma_w, N).

    Matrices are indexed [sigma index][N index]; failed cells hold None.
    """
    task_id: TaskId
    n_grid: List[int]
    sigma_grid: List[float]
    mean_train_rnmse: List[List[Optional[float]]]
    std: List[List[Optional[float]]]
    runs: List[List[int]]
    failed: List[List[bool]]

    def values(self) -> np.ndarray:
        return np.array(
            [[np.nan if v is None else v for v in row] for row in self.mean_train_rnmse],
            dtype=float,
        )

    def column_failed(self, j: int) -> bool:
        return any(row[j] for row in self.failed)


def _check_grid(name: str, grid: Sequence[float]) -> None:
    if len(grid) == 0:
        raise ContractViolation(f"{name} is empty")
    if np.any(np.diff(np.asarray(grid, dtype=float)) <= 0):
        raise ContractViolation(f"{name} must be strictly ascending")


def sweep_surface(
        task: TaskId,
        n_grid: Sequence[int],
        sigma_grid: Sequence[float],
        protocol: Protocol,
        workers: Optional[int] = 1,
) -> ErrorSurface:
    """Every (sigma_w, N) cell averages `protocol.surface_runs` ESN runs."""
    task = TaskId(task)
    _check_grid("n_grid", n_grid)
    _check_grid("sigma_grid", sigma_grid)
    cell_protocol = protocol.for_surface()

    cells: List[Tuple[int, int, Hyperparams]] = []
    jobs = []
    bounds = []
    for i, sigma in enumerate(sigma_grid):
        for j, n in enumerate(n_grid):
            hyper = Hyperparams(size=int(n), sigma_w=float(sigma))
            cell_jobs = protocol_jobs(Architecture.ESN, hyper, task, cell_protocol)
            bounds.append((len(jobs), len(jobs) + len(cell_jobs)))
            jobs.extend(cell_jobs)
            cells.append((i, j, hyper))
    logger.info(f"sweeping {len(cells)} cells ({len(jobs)} runs) on {task.value}")
    results = execute(run_series, jobs, workers)

    shape = (len(sigma_grid), len(n_grid))
    mean = [[None] * shape[1] for _ in range(shape[0])]
    std = [[None] * shape[1] for _ in range(shape[0])]
    runs = [[0] * shape[1] for _ in range(shape[0])]
    failed = [[False] * shape[1] for _ in range(shape[0])]
    for (i, j, hyper), (lo, hi) in zip(cells, bounds):
        cell_runs = [run for batch in results[lo:hi] for run in batch]
        stats = aggregate(cell_runs, task, describe_model(Architecture.ESN, hyper)).rnmse.train
        runs[i][j] = stats.n
        if stats.n == 0:
            failed[i][j] = True
            logger.warning(f"every run failed at sigma_w={hyper.sigma_w:g}, N={hyper.size}")
        else:
            mean[i][j], std[i][j] = stats.mean, stats.std

    return ErrorSurface(
        task_id=task, n_grid=[int(n) for n in n_grid], sigma_grid=[float(s) for s in sigma_grid],
        mean_train_rnmse=mean, std=std, runs=runs, failed=failed,
    )


def refine_grid(grid: Sequence[float], factor: int = REFINEMENT) -> np.ndarray:
    """Split every interval of `grid` into `factor` equal parts, keeping the nodes."""
    grid = np.asarray(grid, dtype=float)
    if grid.size == 1:
        return grid.copy()
    pieces = [np.linspace(a, b, factor, endpoint=False) for a, b in zip(grid[:-1], grid[1:])]
    return np.concatenate(pieces + [grid[-1:]])


def optimal_sigma(surface: ErrorSurface, refine: int = REFINEMENT) -> Dict[int, float]:
    """sigma_w*(N): argmin of the interpolated surface along each N column.

    The surface interpolant is piecewise bilinear; at a grid N it reduces
    to linear interpolation in sigma_w, evaluated on a grid `refine` times
    finer. Ties resolve to the smallest sigma_w.
    """
    values = surface.values()
    fine = refine_grid(surface.sigma_grid, refine)
    result: Dict[int, float] = {}
    for j, n in enumerate(surface.n_grid):
        column = values[:, j]
        if surface.column_failed(j) or not np.all(np.isfinite(column)):
            logger.warning(f"skipping N={n}: column has failed cells")
            continue
        curve = np.interp(fine, surface.sigma_grid, column)
        result[n] = float(fine[int(np.argmin(curve))])
    return result


def surface_interpolator(surface: ErrorSurface) -> scipy.interpolate.RegularGridInterpolator:
    if len(surface.sigma_grid) < 2 or len(surface.n_grid) < 2:
        raise ContractViolation("bilinear interpolation needs at least two grid points per axis")
    values = surface.values()
    if not np.all(np.isfinite(values)):
        raise ContractViolation("surface has failed cells")
    return scipy.interpolate.RegularGridInterpolator(
        (np.asarray(surface.sigma_grid), np.asarray(surface.n_grid, dtype=float)), values, method="linear",
    )


def surface_fit_statistics(surface: ErrorSurface) -> Tuple[float, float]:
    """SSE and R^2 of the bilinear interpolant at the surface's own data points."""
    interp = surface_interpolator(surface)
    sig, n = np.meshgrid(surface.sigma_grid, surface.n_grid, indexing="ij")
    points = np.column_stack([sig.ravel(), n.ravel().astype(float)])
    data = surface.values().ravel()
    sse = float(np.sum((interp(points) - data) ** 2))
    return sse, r_squared(sse, data)
