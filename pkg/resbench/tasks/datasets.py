from ..core.errors import ContractViolation
from ..models import Dataset, SeriesPair


def make_dataset(pair: SeriesPair, train_len: int, washout: int = 0) -> Dataset:
    """Split a series chronologically; no shuffling."""
    T = len(pair)
    if not 0 < train_len < T:
        raise ContractViolation(f"train_len must lie in (0, {T}), got {train_len}")
    if not 0 <= washout < train_len:
        raise ContractViolation(f"washout must lie in [0, {train_len}), got {washout}")
    return Dataset(pair=pair, train_len=train_len, washout=washout)
