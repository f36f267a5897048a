import logging
from pathlib import Path

from ..core.config import RunConfig
from ..experiments import Hyperparams, model_seed, run_protocol, series_seed, train_model
from ..experiments.protocol import validate_hyperparams
from ..models import Architecture
from ..reporting import model_to_dict, provenance, read_series, write_json, write_report
from ..tasks import generate, make_dataset
from .router import MODEL, OUT, PROTOCOL, SEED, SIGMA, SIZE, TASK, Router, arg, require

logger = logging.getLogger(__name__)

router = Router()


def hyperparams(config: RunConfig) -> Hyperparams:
    sigma = config.sigma if config.model is Architecture.ESN else None
    hyper = Hyperparams(size=config.n, sigma_w=sigma)
    validate_hyperparams(config.model, hyper)
    return hyper


@router.command(
    "train", "train one model and write its weights as JSON",
    MODEL, SIZE, SIGMA, TASK, SEED, OUT,
    arg("--series", dest="inputs", help="train on this series CSV instead of a generated one"),
    *PROTOCOL,
)
def train(config: RunConfig) -> Path:
    require(config, "out")
    protocol = config.protocol()
    seed = config.resolved_seed()
    if config.inputs:
        pair = read_series(Path(config.inputs[0]))
    else:
        pair = generate(config.task, protocol.series_len, series_seed(seed, config.task, 0), protocol.noise_std)
    dataset = make_dataset(pair, protocol.train_len, protocol.washout)
    model = train_model(config.model, hyperparams(config), dataset, model_seed(seed, pair.task_id, config.model, 0, 0))
    logger.info(f"{config.model.value} N={config.n}: training RNMSE {model.training_meta.train_rnmse}")
    return write_json(Path(config.out), "model", model_to_dict(model), provenance(config))


@router.command(
    "evaluate", "run the train/test protocol for one model and write the error report",
    MODEL, SIZE, SIGMA, TASK, OUT, *PROTOCOL,
)
def evaluate(config: RunConfig) -> Path:
    require(config, "out")
    report = run_protocol(config.model, hyperparams(config), config.task, config.protocol(), config.resolved_workers())
    stats = report.rnmse
    logger.info(f"{report.model} on {report.task_id.value}: train RNMSE {stats.train.mean}, test RNMSE {stats.test.mean}")
    return write_report(Path(config.out), report, provenance(config))
