class ResbenchError(Exception):
    """Base error; `exit_code` is what the command line returns for it."""

    exit_code = 1

    def __init__(self, detail: str):
        super().__init__(detail)
        self.detail = detail


class ContractViolation(ResbenchError, ValueError):
    """Arguments that break an operation's preconditions"""


class ConfigError(ResbenchError):
    """Bad configuration value; `key` names the offending setting"""

    def __init__(self, key: str, detail: str):
        super().__init__(f"{key}: {detail}")
        self.key = key


class NumericalError(ResbenchError):
    exit_code = 2


class NonFiniteInputError(NumericalError, ValueError):
    pass


class UndefinedMetricError(NumericalError):
    """Metric denominator is zero (constant target, zero range, y + y_hat = 0)"""


class SeriesDivergenceError(NumericalError):
    """Generator kept escaping its bound after every retry"""


class AllRunsFailedError(NumericalError):
    pass
