import logging
from pathlib import Path

from ..core.config import RunConfig
from ..core.errors import AllRunsFailedError, ContractViolation
from ..experiments import fit_optimal_sigma_curve, optimal_sigma, surface_fit_statistics, sweep_surface
from ..models import Architecture
from ..reporting import provenance, read_surface, write_power_law, write_surface
from .router import MODEL, OUT, PROTOCOL, TASK, Router, arg, require

logger = logging.getLogger(__name__)

router = Router()


@router.command(
    "sweep", "mean training RNMSE of the ESN over a sigma_w x N grid",
    TASK, MODEL, OUT,
    arg("--n-grid", dest="n_grid", help="comma separated reservoir sizes"),
    arg("--sigma-grid", dest="sigma_grid", help="comma separated sigma_w values"),
    *PROTOCOL,
)
def sweep(config: RunConfig) -> Path:
    require(config, "out")
    if config.model is not Architecture.ESN:
        raise ContractViolation("only the ESN has a sigma_w axis to sweep")
    surface = sweep_surface(
        config.task, config.resolved_n_grid(), config.resolved_sigma_grid(), config.protocol(),
        config.resolved_workers(),
    )
    if all(all(row) for row in surface.failed):
        raise AllRunsFailedError(f"every cell of the {config.task.value} surface failed")
    return write_surface(Path(config.out), surface, provenance(config))


@router.command(
    "fit-sigma", "fit a * N**b + c to the optimal sigma_w of a swept surface",
    arg("--surface", help="surface CSV written by sweep"), OUT,
)
def fit_sigma(config: RunConfig) -> Path:
    require(config, "surface", "out")
    surface = read_surface(Path(config.surface))
    samples = optimal_sigma(surface)
    fit = fit_optimal_sigma_curve(samples, surface.task_id)
    extra = {"optimal_sigma": {str(n): s for n, s in samples.items()}}
    try:
        sse, r2 = surface_fit_statistics(surface)
        extra["surface_interpolant"] = {"sse": sse, "r_squared": r2}
    except ContractViolation as e:
        logger.warning(f"no interpolant statistics: {e.detail}")
    return write_power_law(Path(config.out), fit, extra, provenance(config))
