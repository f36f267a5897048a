from typing import Any, Dict

from ..core.config import RunConfig


def provenance(config: RunConfig) -> Dict[str, Any]:
    """What every artifact carries so the run can be repeated from it."""
    return {
        "config": config.canonical(),
        "config_hash": config.config_hash(),
        "base_seed": config.base_seed,
    }
