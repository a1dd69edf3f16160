import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wignermd.grid import Grid1D, Signal, gaussian
from wignermd.hermite import hermite_function
from wignermd.identities import max_residual, bracket_identity_report
from wignermd.moments import covariance, energy_moment_identity, moments
from wignermd.harness import IDENTITY_SIGNALS, named_signal
from wignermd.wigner import Field2D, cross_wigner

from conftest import random_band_limited


def quadrature_moments(f, x):
    # independent oracle: dense trapezoid rule on closed-form samples
    w = np.abs(f(x)) ** 2
    tot = np.trapezoid(w, x)
    mu = np.trapezoid(x * w, x) / tot
    return mu, np.trapezoid((x - mu) ** 2 * w, x) / tot


@pytest.mark.parametrize("k", range(11))
def test_hermite_moments(hermite, grid, k):
    h = hermite[k] if k < len(hermite) else hermite_function(k, grid)
    m = moments(h)
    assert abs(m.mean) <= 1e-8 and abs(m.freq_mean) <= 1e-8
    assert m.variance == pytest.approx(k + 0.5, abs=1e-6)
    assert m.freq_variance == pytest.approx(k + 0.5, abs=1e-6)
    assert m.md_sum == pytest.approx(2 * k + 1, abs=1e-6)


@pytest.mark.parametrize("a", [0.0, 1.0, -2.5])
def test_shifted_gaussian(grid, a):
    m = moments(gaussian(grid, shift=a))
    mu, var = quadrature_moments(lambda t: np.exp(-0.5 * (t - a) ** 2), np.linspace(-15, 15, 30001))
    assert m.mean == pytest.approx(a, abs=1e-7) and mu == pytest.approx(a, abs=1e-7)
    assert m.variance == pytest.approx(0.5, abs=1e-7) and var == pytest.approx(0.5, abs=1e-7)


def test_modulated_gaussian(grid):
    m = moments(gaussian(grid, modulation=1.0))
    assert m.freq_mean == pytest.approx(1.0, abs=1e-8)
    assert m.freq_variance == pytest.approx(0.5, abs=1e-8)


def test_moment_errors(grid):
    with pytest.raises(ValueError, match="zero signal"):
        moments(Signal.zeros(grid))
    W = cross_wigner(hermite_function(0, grid), hermite_function(0, grid))
    with pytest.raises(ValueError, match="zero field"):
        covariance(Field2D(W.grid, np.zeros(W.grid.shape)))


def test_covariance_examples(grid, hermite):
    c = covariance(cross_wigner(hermite[0], hermite[0]))
    assert abs(c.mean_x) <= 1e-10 and abs(c.mean_y) <= 1e-10
    assert c.trace == pytest.approx(0.5, abs=1e-6)
    assert c.energy_moment == pytest.approx(0.5, abs=1e-6)
    for k in (1, 4, 7):
        assert covariance(cross_wigner(hermite[k], hermite[k])).energy_moment == pytest.approx(k + 0.5, abs=1e-5)
    s = gaussian(grid, shift=1.0)
    assert covariance(cross_wigner(s, s)).mean_x == pytest.approx(1.0, abs=1e-6)


def test_covariance_of_gaussian_density_oracle(grid, hermite):
    # |W(h0)|^2 is proportional to exp(-2(x^2 + xi^2)); its variance is 1/4 per axis
    c = covariance(cross_wigner(hermite[0], hermite[0]))
    assert c.var_x == pytest.approx(0.25, abs=1e-10)
    assert c.var_y == pytest.approx(0.25, abs=1e-10)
    assert abs(c.cov_xy) <= 1e-12
    assert np.allclose(c.matrix, [[0.25, 0], [0, 0.25]], atol=1e-10)


def test_energy_moment_identity_examples(grid, hermite):
    r = energy_moment_identity(hermite[3])
    assert r.residual <= 1e-6 and r.gap <= 1e-8
    s = energy_moment_identity(gaussian(grid, shift=1.0))
    assert s.gap == pytest.approx(0.5, abs=1e-6)
    z = energy_moment_identity(hermite[0])
    assert z.energy_moment == pytest.approx(0.5, abs=1e-8)
    assert z.predicted == pytest.approx(0.5, abs=1e-8)


def test_bracket_identities_h0(grid):
    checks = bracket_identity_report(named_signal("h0", grid))
    assert len(checks) == 14
    by = {c.bracket: c for c in checks}
    assert abs(by["<M1 W, W>"].lhs) <= 1e-10
    assert by["<M1^2 W, W>"].lhs == pytest.approx(0.25, abs=1e-8)
    assert by["<M1 D1 W, W>"].lhs == pytest.approx(0.5j, abs=1e-8)
    assert by["<D1 M1 W, W>"].lhs == pytest.approx(-0.5j, abs=1e-8)
    assert max_residual(checks) <= 1e-6


def test_bracket_identities_shifted(grid):
    checks = bracket_identity_report(gaussian(grid, shift=1.0))
    assert [c for c in checks if c.bracket == "<M1 W, W>"][0].lhs == pytest.approx(1.0, abs=1e-7)


@pytest.mark.parametrize("name", IDENTITY_SIGNALS)
def test_bracket_identities_test_set(grid, name):
    assert max_residual(bracket_identity_report(named_signal(name, grid))) <= 1e-6


def test_bracket_identities_rejects_unnormalized(grid):
    with pytest.raises(ValueError, match="not normalized"):
        bracket_identity_report(2 * hermite_function(0, grid))


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 2 ** 31))
def test_property_bracket_identities_random(seed):
    grid = Grid1D()
    assert max_residual(bracket_identity_report(random_band_limited(grid, seed, degree=10))) <= 1e-6


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 2 ** 31))
def test_property_single_signal_bound(seed):
    # n = 0 case of the lower bound: mu^2 + mu_hat^2 + var + var_hat >= 1
    f = random_band_limited(Grid1D(), seed, degree=12)
    assert moments(f).md_sum >= 1 - 1e-10
    r = energy_moment_identity(f)
    assert r.residual <= 1e-6
    assert r.energy_moment >= 0.5 - 1e-10
