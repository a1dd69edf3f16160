"""scikit-learn style wrappers: each row of ``X`` is a signal sampled on the grid.

Complex signals are passed either as complex arrays or as real arrays of
width ``2N`` holding the real parts followed by the imaginary parts.
"""
from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .grid import Grid1D, Signal
from .hermite import hermite_functions, max_resolved_degree
from .moments import moments
from .wigner import cross_wigner


def _rows(X, size: int) -> np.ndarray:
    X = np.asarray(X)
    if X.ndim == 1:
        X = X[None, :]
    if X.ndim != 2:
        raise ValueError(f"expected a 2D array of signals, got shape {X.shape}")
    if np.iscomplexobj(X):
        out = X.astype(complex)
    else:
        X = X.astype(float)
        if X.shape[1] == 2 * size:
            out = X[:, :size] + 1j * X[:, size:]
        else:
            out = X.astype(complex)
    if out.shape[1] != size:
        raise ValueError(f"expected {size} samples per signal, got {out.shape[1]}")
    if not np.all(np.isfinite(out)):
        raise ValueError("input contains NaN or infinity")
    return out


class _GridEstimator(TransformerMixin, BaseEstimator):
    def fit(self, X, y=None):
        self.grid_ = Grid1D(float(self.half_width), int(self.size))
        _rows(X, self.grid_.size)
        self.n_features_in_ = self.grid_.size
        return self

    def _signals(self, X):
        check_is_fitted(self, "grid_")
        return [Signal(self.grid_, row) for row in _rows(X, self.grid_.size)]


class HermiteProjector(_GridEstimator):
    """Hermite coefficients ``<f, h_k>``, ``k < n_components``."""

    def __init__(self, n_components=32, size=512, half_width=12.0):
        self.n_components = n_components
        self.size = size
        self.half_width = half_width

    def fit(self, X, y=None):
        super().fit(X)
        top = max_resolved_degree(self.grid_)
        if not 1 <= self.n_components <= top + 1:
            raise ValueError(f"n_components must lie in [1, {top + 1}] on this grid")
        self.basis_ = hermite_functions(self.n_components, self.grid_)
        return self

    def transform(self, X):
        check_is_fitted(self, "basis_")
        V = _rows(X, self.grid_.size)
        return self.grid_.spacing * V @ self.basis_.T

    def inverse_transform(self, A):
        check_is_fitted(self, "basis_")
        A = np.asarray(A, dtype=complex)
        return np.atleast_2d(A) @ self.basis_


class WignerTransformer(_GridEstimator):
    """``W(f)`` of each signal, flattened to ``N * N`` real values."""

    def __init__(self, size=512, half_width=12.0):
        self.size = size
        self.half_width = half_width

    def transform(self, X):
        return np.stack([cross_wigner(f, f).samples.real.ravel() for f in self._signals(X)])


class MomentTransformer(_GridEstimator):
    """Means and variances in time and frequency, one row per signal."""

    def __init__(self, size=512, half_width=12.0):
        self.size = size
        self.half_width = half_width

    def transform(self, X):
        out = []
        for f in self._signals(X):
            r = moments(f)
            out.append([r.mean, r.freq_mean, r.variance, r.freq_variance])
        return np.array(out)

    def get_feature_names_out(self, input_features=None):
        return np.array(["mean", "freq_mean", "variance", "freq_variance"], dtype=object)
