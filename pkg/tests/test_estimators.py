import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError
from sklearn.pipeline import make_pipeline

from wignermd.estimators import HermiteProjector, MomentTransformer, WignerTransformer
from wignermd.grid import Grid1D
from wignermd.hermite import hermite_functions


@pytest.fixture
def X():
    h = hermite_functions(4, Grid1D(12.0, 128))
    return np.stack([h[0], h[1] + 1j * h[2], (h[0] + h[3]) / np.sqrt(2)])


def test_params_and_clone():
    est = HermiteProjector(n_components=8, size=128)
    assert est.get_params() == {"n_components": 8, "size": 128, "half_width": 12.0}
    assert clone(est).get_params() == est.get_params()
    est.set_params(n_components=4)
    assert est.n_components == 4


def test_projector_round_trip(X):
    est = HermiteProjector(n_components=6, size=128).fit(X)
    A = est.transform(X)
    assert A.shape == (3, 6)
    assert np.allclose(A[1, :3], [0, 1, 1j], atol=1e-10)
    assert np.allclose(est.inverse_transform(A), X, atol=1e-10)


def test_real_split_input(X):
    est = HermiteProjector(n_components=4, size=128).fit(X)
    split = np.hstack([X.real, X.imag])
    assert np.allclose(est.transform(split), est.transform(X))


def test_validation(X):
    with pytest.raises(NotFittedError):
        HermiteProjector(size=128).transform(X)
    with pytest.raises(ValueError):
        HermiteProjector(size=128).fit(X[:, :100])
    with pytest.raises(ValueError):
        HermiteProjector(n_components=100, size=128).fit(X)
    bad = X.copy()
    bad[0, 0] = np.nan
    with pytest.raises(ValueError):
        HermiteProjector(size=128).fit(bad)


def test_wigner_and_moments(X):
    W = WignerTransformer(size=128).fit_transform(X)
    assert W.shape == (3, 128 * 128)
    m = make_pipeline(MomentTransformer(size=128)).fit_transform(X)
    assert m.shape == (3, 4)
    assert m[0, 2] == pytest.approx(0.5, abs=1e-8)
    assert list(MomentTransformer().get_feature_names_out()) == ["mean", "freq_mean", "variance", "freq_variance"]
