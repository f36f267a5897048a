import argparse

from .curves import router as curve_router
from .reports import router as report_router
from .router import CommandParser, Router, arg
from .series import router as series_router
from .surfaces import router as surface_router
from .training import router as training_router

api_router = Router()

api_router.include_router(series_router)
api_router.include_router(training_router)
api_router.include_router(surface_router)
api_router.include_router(curve_router)
api_router.include_router(report_router)

COMMON = (
    arg("--config", help="settings file (key=value lines)"),
    arg("--preset", choices=["paper", "desk"], help="experiment scale"),
    arg("--base-seed", dest="base_seed", type=int, help="root of every derived seed"),
    arg("--workers", type=int, help="worker processes (default: available cores)"),
    arg("--log-level", dest="log_level", help="DEBUG, INFO, WARNING or ERROR"),
)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    for argument in COMMON:
        common.add_argument(*argument.flags, **argument.options)
    parser = CommandParser(prog="resbench", description="Reservoir computing benchmark pipeline")
    return api_router.build(parser, parents=[common])
