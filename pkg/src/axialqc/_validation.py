"""Input checks for the array-based estimator API."""

import numpy as np
from sklearn.utils.validation import check_array

from .exceptions import InvalidState
from .state import ASDensityMatrix, validate

N_STATE_COLUMNS = 10


def check_state_array(X, tol: float = 1e-9) -> np.ndarray:
    """Validate rows of flat state records ``p1, a, b, c, d, p6, Re u, Im u, Re v, Im v``.

    Raises
    ------
    ValueError
        If ``X`` is not a finite 2-D array with 10 columns.
    InvalidState
        If any row violates positivity, normalization or the coherence bounds.
    """
    X = check_array(X, dtype=np.float64, ensure_2d=True)
    if X.shape[1] != N_STATE_COLUMNS:
        raise ValueError(f"expected {N_STATE_COLUMNS} state columns, got {X.shape[1]}")
    for i, row in enumerate(X):
        report = validate(ASDensityMatrix.from_record(row), tol=tol)
        if not report.valid:
            raise InvalidState(f"row {i}: {report.violations}")
    return X


def check_params_array(X, n_params: int, need_temperature: bool) -> np.ndarray:
    X = check_array(X, dtype=np.float64, ensure_2d=True)
    expected = n_params + int(need_temperature)
    if X.shape[1] != expected:
        raise ValueError(f"expected {expected} columns, got {X.shape[1]}")
    if need_temperature and np.any(X[:, -1] <= 0):
        raise ValueError("temperature column must be positive")
    return X
