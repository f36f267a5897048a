import logging
from pathlib import Path

from ..core.config import RunConfig
from ..reporting import provenance, write_series
from ..tasks import generate
from .router import OUT, SEED, TASK, Router, arg, require

logger = logging.getLogger(__name__)

router = Router()


@router.command(
    "gen", "generate one input/target series and write it as CSV",
    TASK,
    arg("--steps", type=int, help="series length"),
    arg("--noise-std", dest="noise_std", type=float, help="Henon process noise"),
    SEED, OUT,
)
def gen(config: RunConfig) -> Path:
    require(config, "out")
    pair = generate(config.task, config.steps, config.resolved_seed(), config.protocol().noise_std)
    path = write_series(Path(config.out), pair, provenance(config))
    logger.info(f"wrote {len(pair)} steps of {pair.task_id.value} to {path}")
    return path
