"""scikit-learn compatible transformers.

Both transformers are stateless: ``fit`` only validates the input and
records ``n_features_in_``.  They chain, so thermal correlations over a table
of couplings come out of one pipeline::

    from sklearn.pipeline import make_pipeline
    pipe = make_pipeline(GibbsStateTransformer(T=0.5), CorrelationTransformer())
    pipe.fit_transform(params_table)   # columns U0, U1, U, F0, F1, F
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from ._validation import N_STATE_COLUMNS, check_params_array, check_state_array
from .closed_form import correlations
from .state import ASDensityMatrix
from .thermal import PARAM_NAMES, HamiltonianParams, gibbs_state

__all__ = ["CorrelationTransformer", "GibbsStateTransformer"]

STATE_COLUMNS = ("p1", "a", "b", "c", "d", "p6", "re_u", "im_u", "re_v", "im_v")
BRANCH_COLUMNS = ("U0", "U1", "U", "F0", "F1", "F")


class CorrelationTransformer(TransformerMixin, BaseEstimator):
    """Map state records to LQU/LQFI branch values.

    Parameters
    ----------
    columns : tuple of str, default all six
        Subset of ``("U0", "U1", "U", "F0", "F1", "F")`` to output, in order.
    tol : float, default 1e-9
        Tolerance for rejecting invalid states.
    """

    def __init__(self, columns=BRANCH_COLUMNS, tol=1e-9):
        self.columns = columns
        self.tol = tol

    def _check_columns(self):
        unknown = set(self.columns) - set(BRANCH_COLUMNS)
        if unknown or not self.columns:
            raise ValueError(f"columns must be a non-empty subset of {BRANCH_COLUMNS}")

    def fit(self, X, y=None):
        self._check_columns()
        X = check_state_array(X, tol=self.tol)
        self.n_features_in_ = X.shape[1]
        return self

    def transform(self, X):
        check_is_fitted(self, "n_features_in_")
        self._check_columns()
        X = check_state_array(X, tol=self.tol)
        out = np.empty((X.shape[0], len(self.columns)))
        for i, row in enumerate(X):
            br = correlations(ASDensityMatrix.from_record(row))
            out[i] = [getattr(br, c) for c in self.columns]
        return out

    def get_feature_names_out(self, input_features=None):
        return np.asarray(self.columns, dtype=object)


class GibbsStateTransformer(TransformerMixin, BaseEstimator):
    """Map Hamiltonian couplings to thermal state records.

    Input columns are ``B1, B2, J, Jz, K, K1, K2, Dz, Gamma, Lambda`` and, if
    ``T`` is None, an eleventh temperature column.  Output rows are flat
    10-real state records accepted by :class:`CorrelationTransformer`.
    """

    def __init__(self, T=None):
        self.T = T

    def _check(self, X):
        X = check_params_array(X, len(PARAM_NAMES), need_temperature=self.T is None)
        if self.T is not None and not self.T > 0:
            raise ValueError(f"T must be positive, got {self.T!r}")
        return X

    def fit(self, X, y=None):
        X = self._check(X)
        self.n_features_in_ = X.shape[1]
        return self

    def transform(self, X):
        check_is_fitted(self, "n_features_in_")
        X = self._check(X)
        out = np.empty((X.shape[0], N_STATE_COLUMNS))
        for i, row in enumerate(X):
            T = row[-1] if self.T is None else self.T
            state, _ = gibbs_state(HamiltonianParams(*row[:len(PARAM_NAMES)]), T)
            out[i] = state.to_record()
        return out

    def get_feature_names_out(self, input_features=None):
        return np.asarray(STATE_COLUMNS, dtype=object)
