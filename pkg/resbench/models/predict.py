import numpy as np

from . import Architecture, SeriesPair, TrainedModel
from .delay_line import dl_forward
from .esn import esn_forward
from .narx import narx_forward

_FORWARD = {
    Architecture.DELAY_LINE: dl_forward,
    Architecture.ESN: esn_forward,
    Architecture.NARX: narx_forward,
}


def predict(model: TrainedModel, series: SeriesPair) -> np.ndarray:
    """Model output for every step of `series`.

    Delay line and reservoir state restart from zero at the first step of
    `series`, so pass the full series to give test steps their real history.
    """
    return _FORWARD[model.spec.architecture](model, series)
