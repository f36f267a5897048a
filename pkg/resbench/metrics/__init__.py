"""Error measures and cross-run aggregation."""
from .errors import METRICS, NORMALIZATION, evaluate, nmse, nrmse, rnmse, samp
from .report import ErrorReport, MeanStd, RunErrors, SplitStats, aggregate, score

__all__ = [
    "METRICS", "NORMALIZATION", "evaluate", "nmse", "nrmse", "rnmse", "samp",
    "ErrorReport", "MeanStd", "RunErrors", "SplitStats", "aggregate", "score",
]
