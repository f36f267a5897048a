import logging
from pathlib import Path

from ..core.config import RunConfig
from ..experiments import functional_compare, size_curve
from ..reporting import provenance, read_curve, read_power_law, write_curve, write_equivalence
from .router import MODEL, OUT, PROTOCOL, SIGMA, TASK, Router, arg, require

logger = logging.getLogger(__name__)

router = Router()


@router.command(
    "curve", "training and testing RNMSE of one architecture over a list of sizes",
    MODEL, TASK, SIGMA, OUT,
    arg("--sizes", help="comma separated sizes"),
    arg("--sigma-fit", dest="sigma_fit", help="power-law JSON giving sigma_w*(N) for ESN sizes"),
    *PROTOCOL,
)
def curve(config: RunConfig) -> Path:
    require(config, "sizes", "out")
    fit = read_power_law(Path(config.sigma_fit)) if config.sigma_fit else None
    result = size_curve(
        config.model, config.task, config.sizes, config.protocol(),
        sigma_fit=fit, sigma_w=config.sigma, workers=config.resolved_workers(),
    )
    return write_curve(Path(config.out), result, provenance(config))


@router.command(
    "compare", "size of the candidate architecture matching each reference size's training error",
    arg("--ref", help="reference size-curve CSV"),
    arg("--cand", help="candidate size-curve CSV"),
    OUT,
)
def compare(config: RunConfig) -> Path:
    require(config, "ref", "cand", "out")
    equivalence = functional_compare(read_curve(Path(config.ref)), read_curve(Path(config.cand)))
    matched = sum(1 for p in equivalence.points if p.status.value == "matched")
    logger.info(f"matched {matched}/{len(equivalence.points)} reference sizes")
    return write_equivalence(Path(config.out), equivalence, provenance(config))
