import hashlib
import json
import os
from pathlib import Path
from typing import Any, Dict, List, Literal, Optional

from dotenv import dotenv_values, load_dotenv
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator

from ..experiments import DESK_N_GRID, PAPER_N_GRID, SIGMA_GRID, Protocol, default_workers
from ..models import Architecture, TaskId
from .errors import ConfigError

load_dotenv()

LOG_LEVEL = os.getenv("RESBENCH_LOG_LEVEL", "INFO")

SEED_ENV = "RESBENCH_SEED"
WORKERS_ENV = "RESBENCH_WORKERS"

OUTCOME_NEUTRAL = {"out", "workers"}
CONFIG_LINE = "# config="


class RunConfig(BaseModel):
    """Fully resolved settings of one command.

    Protocol fields left as None take the preset's value.
    """
    model_config = ConfigDict(extra="forbid", frozen=True)

    preset: Literal["paper", "desk"] = "desk"
    task: TaskId = TaskId.NARMA10
    model: Architecture = Architecture.ESN
    n: int = Field(default=100, ge=1)
    sigma: float = Field(default=0.07, gt=0)
    seed: Optional[int] = Field(default=None, ge=0)
    base_seed: int = Field(default=42, ge=0)

    n_series: Optional[int] = Field(default=None, ge=1)
    n_series_esn: Optional[int] = Field(default=None, ge=1)
    series_len: Optional[int] = Field(default=None, ge=3)
    train_len: Optional[int] = Field(default=None, ge=2)
    instances: Optional[int] = Field(default=None, ge=1)
    washout: Optional[int] = Field(default=None, ge=0)
    surface_runs: Optional[int] = Field(default=None, ge=1)
    noise_std: Optional[float] = Field(default=None, ge=0)

    n_grid: Optional[List[int]] = None
    sigma_grid: Optional[List[float]] = None
    sizes: Optional[List[int]] = None
    steps: int = Field(default=4000, ge=3)
    workers: Optional[int] = Field(default=None, ge=1)

    surface: Optional[str] = None
    sigma_fit: Optional[str] = None
    ref: Optional[str] = None
    cand: Optional[str] = None
    inputs: Optional[List[str]] = None
    out: Optional[str] = None

    @field_validator("n_grid", "sigma_grid", "sizes", "inputs", mode="before")
    @classmethod
    def _split_list(cls, value):
        if isinstance(value, str):
            return [item.strip() for item in value.split(",") if item.strip()]
        return value

    def protocol(self) -> Protocol:
        overrides = {
            "n_series": self.n_series,
            "n_series_esn": self.n_series_esn,
            "series_len": self.series_len,
            "train_len": self.train_len,
            "esn_instances_per_series": self.instances,
            "washout": self.washout,
            "surface_runs": self.surface_runs,
            "noise_std": self.noise_std,
        }
        overrides = {k: v for k, v in overrides.items() if v is not None}
        overrides["base_seed"] = self.base_seed
        factory = Protocol.paper if self.preset == "paper" else Protocol.desk
        try:
            return factory(**overrides)
        except ValidationError as e:
            raise ConfigError(_error_key(e), _error_message(e)) from e

    def resolved_n_grid(self) -> List[int]:
        if self.n_grid:
            return list(self.n_grid)
        return list(PAPER_N_GRID if self.preset == "paper" else DESK_N_GRID)

    def resolved_sigma_grid(self) -> List[float]:
        return list(self.sigma_grid) if self.sigma_grid else list(SIGMA_GRID)

    def resolved_seed(self) -> int:
        return self.base_seed if self.seed is None else self.seed

    def resolved_workers(self) -> int:
        if self.workers is not None:
            return self.workers
        env = os.getenv(WORKERS_ENV)
        if env:
            try:
                return max(1, int(env))
            except ValueError:
                raise ConfigError(WORKERS_ENV, f"expected an integer, got {env!r}")
        return default_workers()

    def canonical(self) -> Dict[str, Any]:
        """Settings that shape an artifact's content; `out` and `workers` do not."""
        return self.model_dump(mode="json", exclude=OUTCOME_NEUTRAL)

    def config_hash(self) -> str:
        blob = json.dumps(self.canonical(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode("utf-8")).hexdigest()


def _error_key(error: ValidationError) -> str:
    loc = error.errors()[0].get("loc") or ("config",)
    return str(loc[0])


def _error_message(error: ValidationError) -> str:
    return error.errors()[0].get("msg", str(error))


def _normalise(key: str) -> str:
    return key.strip().lower().replace("-", "_")


def _load_json(text: str, path: Path) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ConfigError("config", f"{path} holds malformed JSON: {e}")


def artifact_config(path: Path) -> Optional[Dict[str, Any]]:
    """The config embedded in a JSON or CSV artifact, None for other files."""
    text = path.read_text(encoding="utf-8")
    if path.suffix == ".json":
        payload = _load_json(text, path)
        if not isinstance(payload, dict) or "config" not in payload.get("provenance", {}):
            raise ConfigError("config", f"{path} carries no provenance config")
        return payload["provenance"]["config"]
    for line in text.splitlines():
        if not line.startswith("#"):
            break
        if line.startswith(CONFIG_LINE):
            return _load_json(line[len(CONFIG_LINE):], path)
    return None


def _file_values(path: Path) -> Dict[str, Any]:
    embedded = artifact_config(path)
    if embedded is not None:
        return {key: value for key, value in embedded.items() if value is not None}
    values = {}
    for key, value in dotenv_values(path).items():
        if value is None:
            raise ConfigError(_normalise(key), "missing value")
        values[key] = value
    return values


def parse_config(file: Optional[Path] = None, flags: Optional[Dict[str, Any]] = None) -> RunConfig:
    """Resolve settings: flags > RESBENCH_SEED > config file > defaults.

    `file` uses dotenv syntax (`sigma=0.05`, lists comma separated), or is
    an artifact whose embedded config is replayed.
    Flags whose value is None count as not given.
    """
    values: Dict[str, Any] = {}
    known = set(RunConfig.model_fields)

    if file is not None:
        path = Path(file)
        if not path.is_file():
            raise ConfigError("config", f"file not found: {path}")
        for key, value in _file_values(path).items():
            name = _normalise(key)
            if name not in known:
                raise ConfigError(name, f"unknown key in {path}")
            values[name] = value

    env_seed = os.getenv(SEED_ENV)
    if env_seed is not None and env_seed.strip():
        values["base_seed"] = env_seed.strip()

    for key, value in (flags or {}).items():
        name = _normalise(key)
        if name not in known:
            raise ConfigError(name, "unknown setting")
        if value is not None:
            values[name] = value

    try:
        return RunConfig.model_validate(values)
    except ValidationError as e:
        raise ConfigError(_error_key(e), _error_message(e)) from e
