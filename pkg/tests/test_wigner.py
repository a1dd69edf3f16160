import math
import warnings

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from numpy.polynomial import laguerre

from wignermd.grid import Grid1D, GridMismatchError, Signal, gaussian, inner_product
from wignermd.hermite import hermite_function
from wignermd.wigner import (
    Field2D,
    QualityWarning,
    check_edge_energy,
    cross_wigner,
    fourier_rotation_check,
    moyal_product,
    outer,
    tensor_grid,
    wig_inverse,
    wig_transform,
    wigner_axis,
    wigner_basis,
    wigner_grid,
)

from conftest import random_band_limited


def laguerre_wigner(k, x, xi):
    r2 = x * x + xi * xi
    c = np.zeros(k + 1)
    c[k] = 1.0
    return math.sqrt(2 / math.pi) * (-1) ** k * laguerre.lagval(2 * r2, c) * np.exp(-r2)


def direct_wigner(f, g, x, xi):
    # dense rectangle rule of the defining lag integral, closed-form inputs
    t = np.linspace(-20, 20, 20001)
    dt = t[1] - t[0]
    return np.sum(f(x + t / 2) * np.conj(g(x - t / 2)) * np.exp(-1j * t * xi)) * dt / math.sqrt(2 * math.pi)


def test_wigner_axis(grid):
    xi = wigner_axis(grid)
    assert xi.size == grid.size
    assert xi.spacing == pytest.approx(math.pi / (grid.size * grid.spacing))


def test_gaussian_at_origin(grid, hermite):
    W = cross_wigner(hermite[0], hermite[0])
    assert W.samples[256, 256].real == pytest.approx(math.sqrt(2 / math.pi), abs=1e-12)
    assert W.samples[256, 256].real == pytest.approx(0.79788456, abs=1e-8)


@pytest.mark.parametrize("k", [0, 1, 4, 9])
def test_hermite_wigner_laguerre_closed_form(grid, hermite, k):
    W = cross_wigner(hermite[k], hermite[k])
    X, XI = W.grid.mesh()
    assert np.max(np.abs(W.samples - laguerre_wigner(k, X, XI))) <= 1e-10


def test_cross_wigner_against_direct_quadrature(grid):
    f = lambda t: np.pi ** -0.25 * np.exp(-0.5 * (t - 0.5) ** 2) * np.exp(0.7j * t)
    g = lambda t: np.pi ** -0.25 * math.sqrt(2) * t * np.exp(-0.5 * t * t)
    fs, gs = Signal.from_function(f, grid), Signal.from_function(g, grid)
    W = cross_wigner(fs, gs)
    xi = W.grid.axis1.nodes
    for i, j in [(256, 256), (250, 270), (270, 240), (240, 262)]:
        assert abs(W.samples[i, j] - direct_wigner(f, g, grid.nodes[i], xi[j])) <= 1e-10


def test_squared_norm_moyal(hermite):
    assert cross_wigner(hermite[2], hermite[5]).squared_norm == pytest.approx(1.0, abs=1e-7)


def test_zero_partner(grid, hermite):
    assert np.all(cross_wigner(hermite[1], Signal.zeros(grid)).samples == 0)


def test_auto_wigner_is_real(grid):
    f = random_band_limited(grid, 11)
    assert np.max(np.abs(cross_wigner(f, f).samples.imag)) <= 1e-14


def test_marginal(grid):
    f = random_band_limited(grid, 5)
    W = cross_wigner(f, f)
    marginal = W.grid.axis1.spacing * W.samples.sum(axis=1)
    assert np.max(np.abs(marginal - math.sqrt(2 * math.pi) * np.abs(f.samples) ** 2)) <= 1e-10


def test_grid_mismatch(grid, small_grid):
    with pytest.raises(GridMismatchError):
        cross_wigner(hermite_function(0, grid), hermite_function(0, small_grid))
    a = cross_wigner(hermite_function(0, grid), hermite_function(0, grid))
    b = cross_wigner(hermite_function(0, small_grid), hermite_function(0, small_grid))
    with pytest.raises(GridMismatchError):
        moyal_product(a, b)


def test_wig_transform_of_tensor(hermite):
    u = outer(hermite[1], hermite[2])
    assert np.max(np.abs(wig_transform(u).samples - cross_wigner(hermite[1], hermite[2]).samples)) <= 1e-9


def test_wig_inverse_round_trip(grid, hermite):
    u = outer(hermite[1], hermite[2])
    back = wig_inverse(wig_transform(u))
    assert back.grid == tensor_grid(grid)
    assert np.max(np.abs(back.samples - u.samples)) <= 1e-7
    zero = Field2D(tensor_grid(grid), np.zeros(tensor_grid(grid).shape))
    assert np.all(wig_transform(zero).samples == 0)


def test_wig_inverse_rejects_wrong_grid(grid):
    with pytest.raises(GridMismatchError):
        wig_inverse(Field2D(tensor_grid(grid), np.zeros((grid.size, grid.size))))


def test_moyal_basis(hermite):
    W = wigner_basis(hermite[:4])
    for (j, k), A in W.items():
        for (i, h), B in W.items():
            assert abs(moyal_product(A, B) - (j == i) * (k == h)) <= 1e-7
    assert moyal_product(W[0, 0], W[0, 0]) == pytest.approx(1.0, abs=1e-8)


def test_rotation_examples(hermite):
    assert fourier_rotation_check(hermite[0], hermite[0]) <= 1e-9
    assert fourier_rotation_check(hermite[1], hermite[3]) <= 1e-7


def test_edge_warning(grid):
    wide = Signal(grid, np.ones(grid.size))
    with pytest.warns(QualityWarning):
        check_edge_energy(wide)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        check_edge_energy(hermite_function(5, grid))


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 2 ** 31))
def test_property_moyal_random(seed):
    grid = Grid1D()
    f1, g1 = random_band_limited(grid, seed), random_band_limited(grid, seed + 1)
    f2, g2 = random_band_limited(grid, seed + 2), random_band_limited(grid, seed + 3)
    lhs = moyal_product(cross_wigner(f1, g1), cross_wigner(f2, g2))
    rhs = inner_product(f1, f2) * np.conj(inner_product(g1, g2))
    assert abs(lhs - rhs) <= 1e-7
    assert cross_wigner(f1, g1).squared_norm == pytest.approx(f1.squared_norm * g1.squared_norm, abs=1e-7)


@settings(max_examples=8, deadline=None)
@given(st.integers(0, 2 ** 31))
def test_property_rotation_random(seed):
    grid = Grid1D(12.0, 256)
    f = random_band_limited(grid, seed, degree=6)
    assert fourier_rotation_check(f, f) <= 1e-6


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 2 ** 31))
def test_property_wig_inverse(seed):
    grid = Grid1D(12.0, 256)
    u = outer(random_band_limited(grid, seed), random_band_limited(grid, seed + 1))
    assert np.max(np.abs(wig_inverse(wig_transform(u)).samples - u.samples)) <= 1e-10


def test_wigner_grid_shape(grid):
    assert wigner_grid(grid).shape == (512, 512)
    assert gaussian(grid).norm == pytest.approx(1.0, abs=1e-12)
