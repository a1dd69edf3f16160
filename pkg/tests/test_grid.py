import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wignermd.grid import (
    Grid1D,
    GridMismatchError,
    Signal,
    angular_frequencies,
    apply_momentum,
    apply_position,
    edge_energy_fraction,
    fourier_transform,
    gaussian,
    inner_product,
    inverse_fourier_transform,
    spectral_derivative,
)
from wignermd.hermite import hermite_function

from conftest import random_band_limited


def closed_form_h0(x):
    return np.pi ** -0.25 * np.exp(-0.5 * x * x)


def test_grid_geometry():
    g = Grid1D()
    assert g.size == 512 and g.half_width == 12.0
    assert g.spacing == pytest.approx(24 / 512)
    assert g.nodes[0] == -12.0
    assert g.nodes[-1] == pytest.approx(12 - g.spacing)
    assert g.nodes[256] == 0.0
    d = g.dual()
    assert d.spacing == pytest.approx(2 * math.pi / (512 * g.spacing))


def test_grid_rejects_bad_sizes():
    with pytest.raises(ValueError):
        Grid1D(12.0, 500)
    with pytest.raises(ValueError):
        Grid1D(-1.0, 512)


def test_grid_equality_and_hash():
    assert Grid1D(12.0, 512) == Grid1D(12.0 + 1e-15, 512)
    assert hash(Grid1D(12.0, 512)) == hash(Grid1D(12.0 + 1e-15, 512))
    assert Grid1D(12.0, 512) != Grid1D(12.0, 256)


def test_nodes_read_only(grid):
    with pytest.raises(ValueError):
        grid.nodes[0] = 1.0


def test_fourier_h0_fixed_point(grid):
    F = fourier_transform(Signal(grid, closed_form_h0(grid.nodes)))
    assert np.max(np.abs(F.samples - closed_form_h0(F.grid.nodes))) <= 1e-10


def test_fourier_zero(grid):
    assert np.all(fourier_transform(Signal.zeros(grid)).samples == 0)


@pytest.mark.parametrize("k", range(8))
def test_fourier_hermite_eigenfunctions(grid, k):
    h = hermite_function(k, grid)
    F = fourier_transform(h)
    expected = (-1j) ** k * hermite_function(k, F.grid).samples
    assert np.max(np.abs(F.samples - expected)) <= 1e-10


def test_fourier_h1_against_dense_quadrature(grid):
    # independent oracle: direct Riemann sum of the defining integral on a finer grid
    h1 = hermite_function(1, grid)
    F = fourier_transform(h1)
    t = np.linspace(-14, 14, 8001)
    dt = t[1] - t[0]
    f = np.sqrt(2.0) * t * closed_form_h0(t)
    xi = F.grid.nodes[200:312:7]
    direct = (np.exp(-1j * np.outer(xi, t)) @ f) * dt / np.sqrt(2 * np.pi)
    assert np.max(np.abs(F.samples[200:312:7] - direct)) <= 1e-10


def test_fourier_square_is_reflection(grid):
    f = gaussian(grid, shift=1.0, modulation=0.5)
    twice = fourier_transform(fourier_transform(f))
    # F^2 f(t) = f(-t); samples are defined on the same lattice as the input
    assert twice.grid == grid
    reflected = np.roll(f.samples[::-1], 1)
    assert np.max(np.abs(twice.samples - reflected)) <= 1e-10
    four = fourier_transform(fourier_transform(twice))
    assert np.max(np.abs(four.samples - f.samples)) <= 1e-10


def test_inverse_fourier(grid):
    f = random_band_limited(grid, 3)
    back = inverse_fourier_transform(fourier_transform(f))
    assert back.grid == grid
    assert np.max(np.abs(back.samples - f.samples)) <= 1e-12


@pytest.mark.parametrize(
    "j, k, expected, tol",
    [(0, 0, 1.0, 1e-10), (0, 1, 0.0, 1e-10), (3, 3, 1.0, 1e-8)],
)
def test_inner_product_examples(grid, j, k, expected, tol):
    assert abs(inner_product(hermite_function(j, grid), hermite_function(k, grid)) - expected) <= tol


def test_inner_product_closed_form_h0(grid):
    h0 = Signal(grid, closed_form_h0(grid.nodes))
    assert abs(inner_product(h0, h0) - 1) <= 1e-10


def test_inner_product_grid_mismatch(grid, small_grid):
    with pytest.raises(GridMismatchError, match="grid mismatch"):
        inner_product(hermite_function(0, grid), hermite_function(0, small_grid))


def test_position_and_momentum_of_h0(grid):
    h0, h1 = hermite_function(0, grid), hermite_function(1, grid)
    assert np.max(np.abs(apply_position(h0).samples - h1.samples / np.sqrt(2))) <= 1e-8
    # D = -i d/dt and h0' = -t h0, so D h0 = i t h0
    assert np.max(np.abs(apply_momentum(h0).samples - 1j * apply_position(h0).samples)) <= 1e-8
    assert np.all(apply_position(Signal.zeros(grid)).samples == 0)


def test_angular_frequencies_nyquist_zero():
    w = angular_frequencies(8, 0.5)
    assert w[4] == 0.0
    assert w[1] == pytest.approx(2 * np.pi / 4)


def test_spectral_derivative_of_gaussian(grid):
    x = grid.nodes
    # the multiplier is D = -i d/dx, so i D recovers the ordinary derivative
    d = 1j * spectral_derivative(np.exp(-x * x), grid.spacing)
    assert np.max(np.abs(d - (-2 * x * np.exp(-x * x)))) <= 1e-10


def test_signal_normalization_errors(grid):
    with pytest.raises(ValueError, match="zero signal"):
        Signal.zeros(grid).normalized()
    with pytest.raises(ValueError):
        Signal(grid, np.ones(10))


def test_edge_energy(grid):
    assert edge_energy_fraction(hermite_function(0, grid)) < 1e-20
    wide = Signal(grid, np.ones(grid.size))
    assert edge_energy_fraction(wide) == pytest.approx(0.1, abs=1e-2)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2 ** 31))
def test_property_fourier_is_unitary(seed):
    grid = Grid1D()
    f = random_band_limited(grid, seed)
    g = random_band_limited(grid, seed + 1)
    lhs = inner_product(fourier_transform(f), fourier_transform(g))
    assert abs(lhs - inner_product(f, g)) <= 1e-12


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2 ** 31))
def test_property_momentum_is_symmetric(seed):
    grid = Grid1D()
    f = random_band_limited(grid, seed)
    g = random_band_limited(grid, seed + 7)
    assert abs(inner_product(apply_momentum(f), g) - inner_product(f, apply_momentum(g))) <= 1e-12
    assert abs(inner_product(apply_position(f), g) - inner_product(f, apply_position(g))) <= 1e-12
