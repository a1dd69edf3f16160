import numpy as np
import pytest

from wignermd.grid import Grid1D, Signal
from wignermd.hermite import hermite_functions


@pytest.fixture(scope="session")
def grid():
    return Grid1D()


@pytest.fixture(scope="session")
def small_grid():
    return Grid1D(12.0, 256)


@pytest.fixture(scope="session")
def hermite(grid):
    rows = hermite_functions(12, grid)
    return [Signal(grid, r) for r in rows]


@pytest.fixture(scope="session")
def small_hermite(small_grid):
    rows = hermite_functions(8, small_grid)
    return [Signal(small_grid, r) for r in rows]


def band_limited(grid, coeffs):
    """Finite Hermite combination, normalized: decays and is resolved on the grid."""
    c = np.asarray(coeffs, dtype=complex)
    rows = hermite_functions(c.size, grid)
    f = Signal(grid, c @ rows)
    return f.normalized()


def random_band_limited(grid, seed, degree=8):
    rng = np.random.default_rng(seed)
    c = rng.standard_normal(degree + 1) + 1j * rng.standard_normal(degree + 1)
    return band_limited(grid, c)
