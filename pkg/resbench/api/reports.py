import logging
from pathlib import Path
from typing import Dict

from ..core.config import RunConfig
from ..reporting import provenance, report as build_report
from .router import Router, arg, require

logger = logging.getLogger(__name__)

router = Router()


@router.command(
    "report", "tables and plot data from error reports, curves, surfaces and comparisons",
    arg("--inputs", nargs="*", help="artifact files to tabulate"),
    arg("--out", help="output directory"),
)
def report(config: RunConfig) -> Dict[str, Path]:
    require(config, "out")
    return build_report([Path(p) for p in config.inputs or []], Path(config.out), provenance(config))
