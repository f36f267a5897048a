import logging
import sys
from typing import List, Optional

from .api import build_parser
from .core.config import LOG_LEVEL, parse_config
from .core.errors import ResbenchError

logger = logging.getLogger(__name__)

NOT_SETTINGS = {"command", "handler", "config", "log_level"}


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=(args.log_level or LOG_LEVEL).upper(),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
    flags = {k: v for k, v in vars(args).items() if k not in NOT_SETTINGS}
    try:
        config = parse_config(args.config, flags)
        args.handler(config)
    except ResbenchError as e:
        logger.error(f"{args.command}: {e.detail}")
        return e.exit_code
    except Exception:
        logger.exception(f"{args.command}: unexpected failure")
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
