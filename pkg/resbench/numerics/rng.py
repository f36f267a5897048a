import hashlib
from typing import Optional, Tuple, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

_MASK64 = (1 << 64) - 1


def derive_seed(*parts: Union[int, str]) -> int:
    """Stable 64-bit seed from an ordered tuple of ints / strings.

    Independent of PYTHONHASHSEED, platform and scheduling order.
    """
    key = "\x1f".join(str(p) for p in parts).encode("utf-8")
    return int.from_bytes(hashlib.blake2b(key, digest_size=8).digest(), "little")


class RngStream(BaseModel):
    """Reproducible random stream keyed by (seed, stream_id).

    The model is immutable; every accessor builds a fresh Philox generator,
    so two calls with the same key return bitwise-identical draws and no
    generator state is ever shared between workers.
    """

    model_config = ConfigDict(frozen=True)

    seed: int = Field(ge=0, le=_MASK64)
    stream_id: int = Field(default=0, ge=0, le=_MASK64)

    def generator(self) -> np.random.Generator:
        seq = np.random.SeedSequence(self.seed, spawn_key=(self.stream_id,))
        return np.random.Generator(np.random.Philox(seq))

    def substream(self, stream_id: int) -> "RngStream":
        return RngStream(seed=self.seed, stream_id=stream_id)

    def normal(
            self, size: Union[int, Tuple[int, ...]], scale: float = 1.0
    ) -> np.ndarray:
        return self.generator().normal(0.0, scale, size)

    def uniform(
            self, low: float, high: float,
            size: Optional[Union[int, Tuple[int, ...]]] = None
    ) -> np.ndarray:
        return self.generator().uniform(low, high, size)
