from enum import Enum
from typing import Dict, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator


class TaskId(str, Enum):
    HENON = "henon"
    NARMA10 = "narma10"
    NARMA20 = "narma20"


class Architecture(str, Enum):
    DELAY_LINE = "dl"
    NARX = "narx"
    ESN = "esn"


class _ArrayModel(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)


class SeriesPair(_ArrayModel):
    """Input sequence u and target sequence y_hat of one generated series."""
    u: np.ndarray
    y_hat: np.ndarray
    task_id: TaskId
    seed: int

    @field_validator("u", "y_hat", mode="before")
    @classmethod
    def _as_vector(cls, value):
        arr = np.asarray(value, dtype=float)
        if arr.ndim != 1:
            raise ValueError(f"expected a 1-D sequence, got shape {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise ValueError("sequence contains non-finite values")
        return arr

    @model_validator(mode="after")
    def _equal_lengths(self):
        if self.u.shape != self.y_hat.shape:
            raise ValueError(f"u has {self.u.size} steps but y_hat has {self.y_hat.size}")
        return self

    def __len__(self) -> int:
        return int(self.u.size)

    def slice(self, start: int, stop: int) -> "SeriesPair":
        return SeriesPair(
            u=self.u[start:stop], y_hat=self.y_hat[start:stop],
            task_id=self.task_id, seed=self.seed,
        )


class Dataset(BaseModel):
    """Chronological train/test split of one series.

    Steps [0, train_len) train, [train_len, T) test; the first `washout`
    training steps are excluded from regression and error.
    """
    model_config = ConfigDict(frozen=True)

    pair: SeriesPair
    train_len: int
    washout: int = 0

    @property
    def train(self) -> SeriesPair:
        return self.pair.slice(0, self.train_len)

    @property
    def test(self) -> SeriesPair:
        return self.pair.slice(self.train_len, len(self.pair))

    @property
    def train_targets(self) -> np.ndarray:
        return self.pair.y_hat[self.washout:self.train_len]


class DelayLine(_ArrayModel):
    """Shift register of the last `taps` inputs; tap 0 is the newest."""
    taps: int = Field(ge=1)
    state: np.ndarray


class EsnParams(_ArrayModel):
    n: int = Field(ge=1)
    sigma_w: float = Field(gt=0)
    w_in: np.ndarray
    w_res: np.ndarray
    seed: int


class EsnState(_ArrayModel):
    x: np.ndarray


class NarxParams(_ArrayModel):
    input_taps: int = 10
    hidden: int = Field(ge=1)
    w_hidden: np.ndarray  # hidden x (input_taps + 1), last column is the bias weight
    w_out: np.ndarray     # hidden + 1, last entry is the bias weight
    seed: int


class ModelSpec(BaseModel):
    architecture: Architecture
    size: int = Field(ge=1)
    sigma_w: Optional[float] = None
    seed: int = 0
    washout: int = 0


class TrainingMeta(BaseModel):
    iterations: int = 0
    sse: float = 0.0
    washout: int = 0
    converged: bool = True
    train_rnmse: Optional[float] = None


class TrainedModel(_ArrayModel):
    spec: ModelSpec
    weights: Dict[str, np.ndarray]
    training_meta: TrainingMeta
