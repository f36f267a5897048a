import argparse
import sys
from typing import Any, Callable, List, NamedTuple, Tuple

from ..core.config import RunConfig
from ..core.errors import ConfigError

Handler = Callable[[RunConfig], Any]


class Argument(NamedTuple):
    flags: Tuple[str, ...]
    options: dict


def arg(*flags: str, **options) -> Argument:
    # unset flags must not shadow config-file values
    options.setdefault("default", None)
    return Argument(flags, options)


class Command(NamedTuple):
    name: str
    help: str
    arguments: Tuple[Argument, ...]
    handler: Handler


class CommandParser(argparse.ArgumentParser):
    """Usage errors exit with status 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


class Router:
    """Collects subcommands; routers nest with `include_router`."""

    def __init__(self):
        self.commands: List[Command] = []

    def command(self, name: str, help: str, *arguments: Argument):
        def decorator(fn: Handler) -> Handler:
            self.commands.append(Command(name, help, arguments, fn))
            return fn
        return decorator

    def include_router(self, other: "Router") -> None:
        self.commands.extend(other.commands)

    def build(self, parser: argparse.ArgumentParser, parents=()) -> argparse.ArgumentParser:
        sub = parser.add_subparsers(dest="command", required=True, metavar="<command>")
        for command in self.commands:
            p = sub.add_parser(command.name, help=command.help, description=command.help, parents=list(parents))
            for argument in command.arguments:
                p.add_argument(*argument.flags, **argument.options)
            p.set_defaults(handler=command.handler)
        return parser


# shared flag groups
TASK = arg("--task", choices=["henon", "narma10", "narma20"], help="benchmark task")
MODEL = arg("--model", choices=["dl", "narx", "esn"], help="architecture")
SIZE = arg("--n", type=int, help="taps, hidden neurons or reservoir nodes")
SIGMA = arg("--sigma", type=float, help="reservoir weight scale sigma_w")
SEED = arg("--seed", type=int, help="seed of this command (defaults to base_seed)")
OUT = arg("--out", help="output path")
PROTOCOL = (
    arg("--n-series", dest="n_series", type=int, help="series per non-ESN experiment"),
    arg("--n-series-esn", dest="n_series_esn", type=int, help="series per ESN experiment"),
    arg("--series-len", dest="series_len", type=int, help="time steps per series"),
    arg("--train-len", dest="train_len", type=int, help="leading steps used for training"),
    arg("--instances", type=int, help="ESN instances per series"),
    arg("--washout", type=int, help="discarded leading training steps"),
    arg("--surface-runs", dest="surface_runs", type=int, help="runs averaged per surface cell"),
    arg("--noise-std", dest="noise_std", type=float, help="Henon process noise"),
)


def require(config: RunConfig, *names: str) -> None:
    for name in names:
        if getattr(config, name) in (None, []):
            raise ConfigError(name, "required by this command")
