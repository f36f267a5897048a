import logging

import numpy as np
import scipy.linalg

from ..core.errors import ContractViolation, NonFiniteInputError

logger = logging.getLogger(__name__)

# Rows are time steps, columns regressors.
DesignMatrix = np.ndarray


def check_finite(name: str, values: np.ndarray) -> None:
    if not np.all(np.isfinite(values)):
        bad = int(np.size(values) - np.count_nonzero(np.isfinite(values)))
        raise NonFiniteInputError(f"{name} contains {bad} non-finite entries")


def solve_least_squares(X: DesignMatrix, Y: np.ndarray) -> np.ndarray:
    """Minimize ||X W - Y||^2 over W.

    Uses a column-pivoted QR factorisation; when X is numerically rank
    deficient it falls back to the SVD-based solver, which returns the
    minimum-norm minimizer. A 1-D `Y` gives a 1-D result.
    """
    X = np.asarray(X, dtype=float)
    Y = np.asarray(Y, dtype=float)
    if X.ndim != 2 or X.shape[0] < 1 or X.shape[1] < 1:
        raise ContractViolation(f"design matrix must be 2-D and non-empty, got shape {X.shape}")
    if Y.ndim not in (1, 2) or Y.shape[0] != X.shape[0]:
        raise ContractViolation(
            f"target rows ({Y.shape[0] if Y.ndim else 0}) do not match design rows ({X.shape[0]})"
        )
    check_finite("design matrix", X)
    check_finite("targets", Y)

    vector_target = Y.ndim == 1
    Y2 = Y[:, None] if vector_target else Y
    rows, cols = X.shape

    W = None
    if rows >= cols:
        Q, R, perm = scipy.linalg.qr(X, mode="economic", pivoting=True)
        diag = np.abs(np.diag(R))
        tol = diag[0] * max(rows, cols) * np.finfo(float).eps if diag.size else 0.0
        if diag.size and diag[-1] > tol:
            Z = scipy.linalg.solve_triangular(R, Q.T @ Y2)
            W = np.empty_like(Z)
            W[perm] = Z
        else:
            logger.debug(f"rank-deficient {rows}x{cols} design, using SVD solver")
    if W is None:
        W, _, _, _ = scipy.linalg.lstsq(X, Y2, lapack_driver="gelsd")

    return W[:, 0] if vector_target else W
